#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "billiards/geometry.hpp"

namespace billiards {

/// Boundary foot point (arc length, mod perimeter) and angle to the
/// positive tangent, in (0, pi).
struct PhasePoint {
    double s = 0.0;
    double phi = 0.0;
};

/// Differential of the billiard map in (s, phi) coordinates.
/// Satisfies det = sin(phi) / sin(phi') (the map preserves sin(phi) ds dphi).
struct Jacobian2 {
    double ds_ds = 0.0, ds_dphi = 0.0;
    double dphi_ds = 0.0, dphi_dphi = 0.0;

    double det() const { return ds_ds * dphi_dphi - ds_dphi * dphi_ds; }
    double max_abs() const;
    Jacobian2 operator-(const Jacobian2& o) const {
        return {ds_ds - o.ds_ds, ds_dphi - o.ds_dphi, dphi_ds - o.dphi_ds, dphi_dphi - o.dphi_dphi};
    }
};

struct ChordAngles {
    double length = 0.0;
    double phi = 0.0;   // departure angle at s
    double phi1 = 0.0;  // arrival angle at s1
};

struct Orbit {
    std::vector<PhasePoint> points;  // starting point first; n+1 entries when complete
    bool complete = true;
    std::size_t failed_index = 0;  // index of the step that failed (when !complete)
    std::string failure;
};

/// Below this angle (and above pi minus it) the chord solver is
/// ill-conditioned and step() refuses to run.
inline constexpr double kGrazingCutoff = 1e-12;

/// One bounce: the next boundary intersection of the ray leaving gamma(s)
/// at angle phi to the tangent, with the new chord-tangent angle. The
/// reflection law holds by construction.
PhasePoint step(const ConvexDomain& dom, const PhasePoint& p);

/// Chord length between boundary points s and s1 plus the two chord-tangent
/// angles; d(length)/ds = -cos(phi), d(length)/ds1 = cos(phi1).
ChordAngles chord(const ConvexDomain& dom, double s, double s1);

/// Closed-form differential at p evaluated from curvature, chord length and
/// the two sines.
Jacobian2 jacobian_exact(const ConvexDomain& dom, const PhasePoint& p);

/// First-order expansion L(s) + phi * A(s) of the differential about the
/// boundary. A is determined by the map itself (and constrained by
/// det Df = sin(phi)/sin(phi')):
///   A = [[-2 k'/k^2, -(8/3) k'/k^3], [0, (4/3) k'/k^2]].
Jacobian2 jacobian_taylor(const ConvexDomain& dom, double s, double phi);

/// n forward bounces starting from p. Stops early (complete = false, with
/// the failing index and message) if an iterate leaves the grazing chart or
/// the chord solver fails; the points collected so far are kept.
Orbit iterate(const ConvexDomain& dom, const PhasePoint& p, std::size_t n);

/// Orbit CSV: columns k, s, phi, x, y at 17 significant digits.
/// `header_comment` is emitted first as a '#' line when non-empty.
void write_orbit_csv(std::ostream& os, const ConvexDomain& dom, const Orbit& orbit,
                     const std::string& header_comment = {});

}  // namespace billiards
