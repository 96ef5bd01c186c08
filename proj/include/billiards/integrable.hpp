#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "billiards/billiard_map.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

enum class CausticClass { confocal_ellipse, confocal_hyperbola, separatrix };

struct CausticInfo {
    double integral_value = 0.0;
    CausticClass cls = CausticClass::confocal_ellipse;
    std::optional<double> rotation_number;  // attached for the confocal_ellipse class
    double rotation_error = 0.0;
};

/// Conserved quantity of the elliptic billiard,
///   I(theta, phi) = cosh^2(mu0) cos^2(phi) + cos^2(theta) sin^2(phi),
/// where the boundary is (h cosh(mu0) cos(theta), h sinh(mu0) sin(theta)).
/// Rejects circles (mu0 undefined) and non-ellipse domains.
double elliptic_first_integral(const ConvexDomain& dom, double theta, double phi);

/// Max |I_k - I_0| along n bounces from p0. Throws if the iteration fails.
double conservation_defect(const ConvexDomain& dom, const PhasePoint& p0, std::size_t n);

/// Level through the foci (evaluated on the orbit aimed at a focus from
/// theta = 0); separates caustic-carrying levels from focal-crossing ones.
double separatrix_level(const ConvexDomain& dom);

struct CausticClassifyOptions {
    double separatrix_tol = 1e-9;
    std::size_t rotation_steps = 4096;
};

CausticInfo classify_caustic(const ConvexDomain& dom, double I,
                             const CausticClassifyOptions& opts = {});

/// Caustic-scan CSV: columns I, class, rotation_number, rotation_error.
void write_caustic_scan_csv(std::ostream& os, const ConvexDomain& dom,
                            const std::vector<double>& levels,
                            const std::string& header_comment = {},
                            const CausticClassifyOptions& opts = {});

}  // namespace billiards
