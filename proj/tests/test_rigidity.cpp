#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "billiards/rigidity.hpp"

using namespace billiards;

namespace {

constexpr double kPi = std::numbers::pi;

SupportCoeffs wavy_coeffs() {
    SupportCoeffs cf;
    cf.c0 = 1.0;
    cf.cos_coeffs = {0.0, 0.04, 0.05};
    cf.sin_coeffs = {0.0, 0.0, 0.0, 0.02};
    return cf;
}

/// Support coefficients of the same body rotated by delta: harmonic pairs
/// rotate by k * delta.
SupportCoeffs rotate_coeffs(const SupportCoeffs& cf, double delta) {
    SupportCoeffs out = cf;
    const std::size_t n = std::max(cf.cos_coeffs.size(), cf.sin_coeffs.size());
    out.cos_coeffs.assign(n, 0.0);
    out.sin_coeffs.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i < cf.cos_coeffs.size() ? cf.cos_coeffs[i] : 0.0;
        const double b = i < cf.sin_coeffs.size() ? cf.sin_coeffs[i] : 0.0;
        const double ang = double(i + 1) * delta;
        out.cos_coeffs[i] = a * std::cos(ang) - b * std::sin(ang);
        out.sin_coeffs[i] = a * std::sin(ang) + b * std::cos(ang);
    }
    return out;
}

}  // namespace

TEST_CASE("boundary match between circles is the linear scaling") {
    const ConvexDomain c1 = build_circle(1.0);
    const ConvexDomain c2 = build_circle(2.0);
    const BoundaryMatch m = boundary_match(c1, c2);
    for (double s : {0.0, 1.0, 3.0, 6.0}) {
        CHECK(m.map(s) == doctest::Approx(2.0 * s).epsilon(1e-11));
        CHECK(m.derivative(s) == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("boundary match of a domain with itself is the identity") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    const BoundaryMatch m = boundary_match(e, e);
    for (double s : {0.0, 1.3, 4.4, 9.0}) CHECK(m.map(s) == doctest::Approx(s).epsilon(1e-10));
}

TEST_CASE("monotone lift: shat(s + L_A) = shat(s) + L_B") {
    const ConvexDomain c = build_circle(1.0);
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    const BoundaryMatch m = boundary_match(c, e, 0.37);
    double prev = m.map(0.0);
    for (double s = 0.05; s <= 2 * kPi + 1e-9; s += 0.05) {
        const double v = m.map(s);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(m.map(2 * kPi) - m.map(0.0) == doctest::Approx(e.perimeter()).epsilon(1e-10));
}

TEST_CASE("analytic shat derivative matches finite differences of the matching") {
    const ConvexDomain c = build_circle(1.0);
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    const BoundaryMatch m = boundary_match(c, e, 0.0);
    const double h = 1e-4;
    for (double s : {0.4, 1.9, 3.3, 5.6}) {
        const double fd = (m.map(s + h) - m.map(s - h)) / (2 * h);
        CHECK(std::abs(fd - m.derivative(s)) < 1e-7);
    }
}

TEST_CASE("delta vanishes for circle pairs") {
    const ConvexDomain a = build_circle(1.0);
    const ConvexDomain b = build_circle(3.0);
    for (double s : {0.0, 1.1, 4.0}) CHECK(std::abs(delta_function(a, b, s)) < 1e-12);
}

TEST_CASE("delta vanishes for a rotated scaled copy with matched base points") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    DomainSpec copy = e.spec();
    copy.rotate = kPi / 5;
    copy.scale = 1.7;
    const ConvexDomain e2 = build_domain(copy);
    for (double s : {0.0, 1.7, 3.1, 6.9, 9.4})
        CHECK(std::abs(delta_function(e, e2, s)) <= 1e-6);
}

TEST_CASE("delta is order one between a circle and the (2,1) ellipse") {
    const ConvexDomain c = build_circle(1.0);
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    for (double offset : {0.0, 0.13, 0.31, 0.57, 0.82}) {
        double sup = 0.0;
        for (int i = 0; i < 128; ++i)
            sup = std::max(sup, std::abs(delta_function(c, e, i * 2 * kPi / 128, offset)));
        CHECK(sup >= 0.01);
    }
}

TEST_CASE("similarity verdicts") {
    const ConvexDomain c1 = build_circle(0.7);
    const ConvexDomain c2 = build_circle(2.3);
    const RigidityReport circles = similarity_test(c1, c2);
    CHECK(circles.verdict == Verdict::similar);
    CHECK(std::abs(circles.alpha_const) < 1e-8);

    const ConvexDomain e = build_ellipse(2.0, 1.0);
    DomainSpec copy = e.spec();
    copy.rotate = kPi / 5;
    copy.scale = 1.7;
    const RigidityReport pair = similarity_test(e, build_domain(copy));
    CHECK(pair.verdict == Verdict::similar);
    CHECK(pair.sup_delta_best <= 1e-6);
    CHECK(std::abs(pair.alpha_const) < 1e-8);
    CHECK(std::abs(pair.step7_integral) < 1e-6);

    const RigidityReport diff = similarity_test(build_circle(1.0), e);
    CHECK(diff.verdict == Verdict::not_similar);
    CHECK(diff.min_sup_delta_scan >= 100.0 * 1e-6);
}

TEST_CASE("verdict symmetry") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    const ConvexDomain c = build_circle(1.0);
    CHECK(similarity_test(c, e).verdict == similarity_test(e, c).verdict);

    const ConvexDomain s1 = build_from_support(wavy_coeffs());
    DomainSpec scaled = s1.spec();
    scaled.scale = 2.4;
    const ConvexDomain s2 = build_domain(scaled);
    const RigidityReport ab = similarity_test(s1, s2);
    const RigidityReport ba = similarity_test(s2, s1);
    CHECK(ab.verdict == Verdict::similar);
    CHECK(ba.verdict == Verdict::similar);
}

TEST_CASE("offset covariance under a parametrization-origin rotation") {
    const ConvexDomain a = build_from_support(wavy_coeffs());
    const double delta = 2 * kPi / 7;
    const ConvexDomain b = build_from_support(rotate_coeffs(wavy_coeffs(), delta));

    const RigidityReport rep_a = similarity_test(a, a);
    const RigidityReport rep_b = similarity_test(a, b);
    CHECK(rep_a.verdict == Verdict::similar);
    CHECK(rep_b.verdict == Verdict::similar);
    CHECK(std::abs(rep_a.sup_delta_best - rep_b.sup_delta_best) < 1e-8);

    // the best offset moves by the lazutkin abscissa of the origin shift:
    // b's chart starts at the material point theta = -delta of `a`, so
    // offset = 1 - x_a(2 pi - delta) (mod 1)
    const double s_shift = a.arclength_of_param(2 * kPi - delta);
    const double expected = 1.0 - a.lazutkin_abscissa(s_shift);
    const double got = rep_b.best_offset;
    const double d = std::abs(got - expected);
    CHECK(std::min(d, std::abs(d - 1.0)) < 1e-6);
}

TEST_CASE("near-circular perturbation is inconclusive") {
    SupportCoeffs tiny;
    tiny.c0 = 1.0;
    tiny.cos_coeffs = {0.0, 0.0, 1e-7};
    const RigidityReport rep = similarity_test(build_from_support(tiny), build_circle(1.0));
    CHECK(rep.verdict == Verdict::inconclusive);
}

TEST_CASE("step-7 integrand is nonpositive for nonnegative alpha") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    for (double alpha : {0.0, 0.3, 2.0}) {
        for (int i = 0; i < 64; ++i) {
            const double k = e.curvature(i * e.perimeter() / 64);
            CHECK(std::pow(1.0 + alpha * k * k, -5.0 / 6.0) - 1.0 <= 1e-15);
        }
    }
}

TEST_CASE("rigidity csv") {
    const RigidityReport rep = similarity_test(build_circle(1.0), build_circle(2.0));
    std::ostringstream os;
    write_rigidity_csv(os, rep, "pair: circles");
    CHECK(os.str().find("s,shat,delta") != std::string::npos);
    const std::string rendered = render_rigidity_report(rep);
    CHECK(rendered.find("verdict: similar") != std::string::npos);
}
