#pragma once

#include <iosfwd>
#include <vector>

#include "billiards/billiard_map.hpp"
#include "billiards/geometry.hpp"
#include "billiards/parallel.hpp"

namespace billiards {

/// Boundary-adapted chart in which the billiard map is a near-integrable
/// shear: x' = x + y + O(y^3), y' = y + O(y^4).
///   x = C^{-1} integral_0^s curvature^{2/3},   y = 4 C^{-1} curvature^{-1/3} sin(phi/2),
/// with C the Lazutkin perimeter. x has period one.
struct LazutkinPoint {
    double x = 0.0;  // mod 1
    double y = 0.0;  // >= 0; zero exactly on the boundary phi = 0
};

LazutkinPoint to_lazutkin(const ConvexDomain& dom, const PhasePoint& p);

/// Inverse chart; throws ChartError when y is too large for the arcsine.
PhasePoint from_lazutkin(const ConvexDomain& dom, const LazutkinPoint& q);

LazutkinPoint step_lazutkin(const ConvexDomain& dom, const LazutkinPoint& q);

/// One conjugated step with the x-increment lifted to the real line
/// (increments stay near y, so the lift adds 1 on wrap-around).
struct LazutkinStepSample {
    double x = 0.0, y = 0.0;
    double xp = 0.0, yp = 0.0;     // image, x mod 1
    double defect_x = 0.0;         // lifted(xp - x) - y
    double defect_y = 0.0;         // yp - y
};

LazutkinStepSample lazutkin_defects(const ConvexDomain& dom, const LazutkinPoint& q);

struct NormalFormOptions {
    double y_min = 5e-3;
    double y_max = 5e-2;
    int points_per_decade = 4;
    int x_samples = 32;
    double noise_floor = 1e-14;
};

/// Log-log slopes of the mean normal-form defects against y. Samples with a
/// mean defect below the noise floor are dropped from the fit; when every
/// sample drops (exactly integrable direction) the corresponding flag is set
/// and the slope is meaningless.
struct NormalFormExponents {
    double slope_x = 0.0;
    double slope_y = 0.0;
    bool x_at_noise_floor = false;
    bool y_at_noise_floor = false;
    std::vector<double> y_grid;
    std::vector<double> mean_defect_x, mean_defect_y;
    std::vector<double> spread_x, spread_y;  // max - min over the x-average
    std::vector<LazutkinStepSample> samples;
};

NormalFormExponents normal_form_exponents(const ConvexDomain& dom, const NormalFormOptions& opts = {},
                                          Exec exec = Exec::parallel);

/// Diagnostic CSV: columns x, y, xp, yp, defect_x, defect_y.
void write_lazutkin_csv(std::ostream& os, const NormalFormExponents& report,
                        const std::string& header_comment = {});

}  // namespace billiards
