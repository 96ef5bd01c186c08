#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "billiards/errors.hpp"
#include "billiards/integrable.hpp"
#include "billiards/spectrum.hpp"

using namespace billiards;

namespace {

constexpr double kPi = std::numbers::pi;

/// Oracle: whether any chord of the orbit crosses the open focal segment
/// {(x, 0) : |x| < h}. Hyperbola-class orbits do, caustic-carrying ones
/// never do.
bool crosses_focal_segment(const ConvexDomain& dom, const Orbit& orbit, double h) {
    for (std::size_t k = 0; k + 1 < orbit.points.size(); ++k) {
        const Vec2 p0 = dom.position(orbit.points[k].s);
        const Vec2 p1 = dom.position(orbit.points[k + 1].s);
        if ((p0.y > 0) == (p1.y > 0)) continue;
        const double t = p0.y / (p0.y - p1.y);
        const double xc = p0.x + t * (p1.x - p0.x);
        if (std::abs(xc) < h) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("first-integral values at reference points") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    // cosh^2(mu0) = a^2 / (a^2 - b^2) = 4/3
    CHECK(elliptic_first_integral(e, 0.0, kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
    for (double th : {0.0, 0.9, 2.5})
        CHECK(elliptic_first_integral(e, th, 0.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("circles are rejected") {
    const ConvexDomain c = build_circle(1.0);
    CHECK_THROWS_AS(elliptic_first_integral(c, 0.0, 0.3), DomainError);
    DomainSpec round;
    round.kind = DomainKind::ellipse;
    round.semi_major = round.semi_minor = 1.5;
    CHECK_THROWS_AS(elliptic_first_integral(build_domain(round), 0.0, 0.3), DomainError);
}

TEST_CASE("conservation along orbits") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    CHECK(conservation_defect(e, {0.0, 0.3}, 10000) <= 1e-8);
    CHECK(conservation_defect(e, {0.0, 0.05}, 10000) <= 1e-8);
    CHECK(conservation_defect(e, {0.0, 1.2}, 1000) <= 1e-9);
    // period-2 major axis: theta alternates {0, pi}, phi stays pi/2
    CHECK(conservation_defect(e, {0.0, kPi / 2}, 100) <= 1e-10);
}

TEST_CASE("separatrix level is the focal value") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    CHECK(separatrix_level(e) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("caustic classification against the focal-segment oracle") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    const double h = std::sqrt(3.0);
    const double I_max = 4.0 / 3.0;

    // outer region: small phi hugs the boundary, caustic is a confocal ellipse
    const CausticInfo outer = classify_caustic(e, I_max - 0.05);
    CHECK(outer.cls == CausticClass::confocal_ellipse);
    REQUIRE(outer.rotation_number.has_value());
    CHECK(*outer.rotation_number > 0.0);
    CHECK(*outer.rotation_number < 0.5);

    const CausticInfo sep = classify_caustic(e, 1.0);
    CHECK(sep.cls == CausticClass::separatrix);

    const CausticInfo inner = classify_caustic(e, 0.5);
    CHECK(inner.cls == CausticClass::confocal_hyperbola);

    CHECK_THROWS_AS(classify_caustic(e, 2.0), RangeError);
    CHECK_THROWS_AS(classify_caustic(e, -0.5), RangeError);

    // oracle cross-check on actual orbits launched on each side
    {
        const double I = I_max - 0.05;
        const double phi = std::acos(std::sqrt((I - 1.0) / (1.0 / 3.0)));
        const Orbit orb = iterate(e, {0.0, phi}, 400);
        REQUIRE(orb.complete);
        CHECK_FALSE(crosses_focal_segment(e, orb, h));
        CHECK(std::abs(elliptic_first_integral(e, 0.0, phi) - I) < 1e-12);
    }
    {
        // hyperbola class: launch from theta = pi/2 at phi slightly off pi/2
        const ConvexDomain& d = e;
        const double s_top = d.arclength_of_param(kPi / 2);
        const Orbit orb = iterate(d, {s_top, kPi / 2 - 0.2}, 400);
        REQUIRE(orb.complete);
        const double I =
            elliptic_first_integral(d, kPi / 2, kPi / 2 - 0.2);
        CHECK(I < 1.0);
        CHECK(crosses_focal_segment(d, orb, h));
        CHECK(classify_caustic(d, I).cls == CausticClass::confocal_hyperbola);
    }
}

TEST_CASE("level sets are monotone in phi near the boundary") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    for (double th : {0.1, 0.8, 1.9, 3.6}) {
        double prev = elliptic_first_integral(e, th, 1e-3);
        for (double phi = 0.1; phi < kPi / 2; phi += 0.1) {
            const double cur = elliptic_first_integral(e, th, phi);
            CHECK(cur <= prev + 1e-14);
            prev = cur;
        }
    }
}

TEST_CASE("rotation number is constant on a level set") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    const double phiA = 0.3;
    const double I0 = elliptic_first_integral(e, 0.0, phiA);
    // second start on the same level at theta = 1: solve I(1, phi) = I0
    const double c2 = std::cos(1.0) * std::cos(1.0);
    // I = (4/3) cos^2 phi + c2 sin^2 phi  =>  cos^2 phi = (I0 - c2) / (4/3 - c2)
    const double cos2 = (I0 - c2) / (4.0 / 3.0 - c2);
    REQUIRE(cos2 > 0.0);
    const double phiB = std::acos(std::sqrt(cos2));
    CHECK(std::abs(elliptic_first_integral(e, 1.0, phiB) - I0) < 1e-13);

    const std::size_t n = 20000;
    const RotationEstimate ra = rotation_number(e, {0.0, phiA}, n);
    const RotationEstimate rb = rotation_number(e, {e.arclength_of_param(1.0), phiB}, n);
    REQUIRE(ra.complete);
    REQUIRE(rb.complete);
    CHECK(std::abs(ra.value - rb.value) <= ra.error_estimate + rb.error_estimate);
}

TEST_CASE("caustic scan csv") {
    const ConvexDomain e = build_ellipse(2.0, 1.0);
    std::ostringstream os;
    write_caustic_scan_csv(os, e, {1.30, 1.0, 0.5});
    const std::string text = os.str();
    CHECK(text.find("I,class,rotation_number,rotation_error") != std::string::npos);
    CHECK(text.find("confocal_ellipse") != std::string::npos);
    CHECK(text.find("separatrix") != std::string::npos);
    CHECK(text.find("confocal_hyperbola") != std::string::npos);
}
