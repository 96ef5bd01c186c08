#include "billiards/billiard_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "billiards/csv.hpp"
#include "billiards/errors.hpp"

namespace billiards {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBisectWidth = 1e-8;   // bracket width handed to Newton
constexpr double kNewtonTol = 1e-13;    // parameter tolerance of the polish

struct StepResult {
    double theta1 = 0.0;  // boundary parameter of the next intersection, in (theta0, theta0 + 2pi)
    PhasePoint next;
};

/// Next intersection of the ray from gamma(s) at angle phi, parametrized by
/// the boundary angle. The signed lateral offset g(t) = cross(d, gamma(t)-P)
/// has exactly two zeros per revolution (departure point and target);
/// g < 0 strictly between them.
StepResult solve_step(const ConvexDomain& dom, const PhasePoint& p) {
    if (!(p.phi > kGrazingCutoff) || !(p.phi < std::numbers::pi - kGrazingCutoff)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "grazing: phi = %.6e outside (%g, pi - %g)", p.phi,
                      kGrazingCutoff, kGrazingCutoff);
        throw GrazingError(buf);
    }
    const double t0 = dom.param_of_arclength(p.s);
    const Vec2 P = dom.position_at_param(t0);
    const Vec2 d = rotated(dom.tangent_at_param(t0), p.phi);

    auto g = [&](double t) { return cross(d, dom.position_at_param(t) - P); };

    // chord extent in the parameter is ~ 2*phi / (kappa * speed); start the
    // lower end at about half of it and shrink until the sign is right
    const double local = dom.curvature_at_param(t0) * dom.speed_at_param(t0);
    double lo_off = std::min(0.5, std::max(1e-13, p.phi / local));
    while (g(t0 + lo_off) >= 0.0) {
        lo_off *= 0.5;
        if (lo_off < 1e-15)
            throw NumericalError("step solver: no lower bracket (grazing beyond cutoff?)");
    }
    double hi_off = std::min(0.5, std::max(1e-13, (std::numbers::pi - p.phi) / local));
    while (g(t0 + kTwoPi - hi_off) <= 0.0) {
        hi_off *= 0.5;
        if (hi_off < 1e-15)
            throw NumericalError("step solver: no upper bracket (grazing beyond cutoff?)");
    }

    double a = t0 + lo_off, b = t0 + kTwoPi - hi_off;
    while (b - a > kBisectWidth) {
        const double mid = 0.5 * (a + b);
        (g(mid) < 0.0 ? a : b) = mid;
    }
    double t = 0.5 * (a + b);
    for (int it = 0; it < 12; ++it) {
        const double gp = dom.speed_at_param(t) * cross(d, dom.tangent_at_param(t));
        const double dt = g(t) / gp;
        t -= dt;
        if (std::abs(dt) <= kNewtonTol) break;
    }
    if (!(t > t0 && t < t0 + kTwoPi)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "step solver left its bracket: t=%.12f (bracket %.12f..%.12f)", t, a, b);
        throw NumericalError(buf);
    }

    StepResult r;
    r.theta1 = t;
    r.next.s = dom.wrap(dom.arclength_of_param(t));
    const double c = std::clamp(dot(d, dom.tangent_at_param(t)), -1.0, 1.0);
    r.next.phi = std::acos(c);
    return r;
}

struct ChordFrame {
    double length;
    double cos_dep, sin_dep;  // angle at s between tangent and chord
    double cos_arr, sin_arr;  // angle at s1
};

ChordFrame chord_frame(const ConvexDomain& dom, double s, double s1) {
    const Vec2 P0 = dom.position(s), P1 = dom.position(s1);
    const Vec2 diff = P1 - P0;
    const double len = norm(diff);
    if (!(len > 1e-14)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "degenerate chord: s=%.12g, s1=%.12g coincide", s, s1);
        throw DegenerateChordError(buf);
    }
    const Vec2 e = diff / len;
    const Vec2 T0 = dom.tangent(s), T1 = dom.tangent(s1);
    ChordFrame f;
    f.length = len;
    f.cos_dep = dot(e, T0);
    f.sin_dep = cross(T0, e);  // e lies on the interior side of T0
    f.cos_arr = dot(e, T1);
    f.sin_arr = cross(e, T1);
    return f;
}

}  // namespace

double Jacobian2::max_abs() const {
    return std::max(std::max(std::abs(ds_ds), std::abs(ds_dphi)),
                    std::max(std::abs(dphi_ds), std::abs(dphi_dphi)));
}

PhasePoint step(const ConvexDomain& dom, const PhasePoint& p) {
    return solve_step(dom, p).next;
}

ChordAngles chord(const ConvexDomain& dom, double s, double s1) {
    const ChordFrame f = chord_frame(dom, s, s1);
    ChordAngles c;
    c.length = f.length;
    c.phi = std::acos(std::clamp(f.cos_dep, -1.0, 1.0));
    c.phi1 = std::acos(std::clamp(f.cos_arr, -1.0, 1.0));
    return c;
}

Jacobian2 jacobian_exact(const ConvexDomain& dom, const PhasePoint& p) {
    const PhasePoint q = step(dom, p);
    const double ell = norm(dom.position(q.s) - dom.position(p.s));
    const double k0 = dom.curvature(p.s);
    const double k1 = dom.curvature(q.s);
    const double sf = std::sin(p.phi);
    const double sf1 = std::sin(q.phi);
    if (std::abs(sf1) < 1e-14) throw NearTangencyError("jacobian_exact: sin(phi') below 1e-14");
    Jacobian2 J;
    J.ds_ds = (k0 * ell - sf) / sf1;
    J.ds_dphi = ell / sf1;
    J.dphi_ds = (k0 * k1 * ell - k0 * sf1 - k1 * sf) / sf1;
    J.dphi_dphi = (k1 * ell - sf1) / sf1;
    return J;
}

Jacobian2 jacobian_taylor(const ConvexDomain& dom, double s, double phi) {
    const double k = dom.curvature(s);
    const double kd = dom.curvature_deriv(s);
    Jacobian2 J;
    J.ds_ds = 1.0 + phi * (-2.0 * kd / (k * k));
    J.ds_dphi = 2.0 / k + phi * (-(8.0 / 3.0) * kd / (k * k * k));
    J.dphi_ds = 0.0;
    J.dphi_dphi = 1.0 + phi * ((4.0 / 3.0) * kd / (k * k));
    return J;
}

Orbit iterate(const ConvexDomain& dom, const PhasePoint& p, std::size_t n) {
    if (n < 1) throw std::invalid_argument("iterate: n must be >= 1");
    Orbit orbit;
    orbit.points.reserve(n + 1);
    orbit.points.push_back({dom.wrap(p.s), p.phi});
    for (std::size_t k = 0; k < n; ++k) {
        try {
            orbit.points.push_back(step(dom, orbit.points.back()));
        } catch (const std::exception& e) {
            orbit.complete = false;
            orbit.failed_index = k;
            orbit.failure = e.what();
            break;
        }
    }
    return orbit;
}

void write_orbit_csv(std::ostream& os, const ConvexDomain& dom, const Orbit& orbit,
                     const std::string& header_comment) {
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "k,s,phi,x,y\n";
    for (std::size_t k = 0; k < orbit.points.size(); ++k) {
        const Vec2 pos = dom.position(orbit.points[k].s);
        os << k << ',' << csv::g17(orbit.points[k].s) << ',' << csv::g17(orbit.points[k].phi) << ','
           << csv::g17(pos.x) << ',' << csv::g17(pos.y) << "\n";
    }
}

}  // namespace billiards
