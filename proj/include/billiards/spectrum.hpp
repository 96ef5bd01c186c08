#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "billiards/billiard_map.hpp"
#include "billiards/geometry.hpp"
#include "billiards/parallel.hpp"

namespace billiards {

/// Closed billiard polygon of rotation number p/q: q boundary nodes in
/// orbit order, maximizing total chord length among the solver's basin
/// sweep. residual is the worst node defect |arrival angle - departure
/// angle| of the reflection law.
struct PeriodicOrbit {
    int p = 0;
    int q = 0;
    std::vector<double> nodes;
    double total_length = 0.0;
    double residual = 0.0;
};

struct BetaSample {
    int p = 0;
    int q = 0;
    double omega = 0.0;
    double beta = 0.0;  // -max_length / q
    double length = 0.0;
};

struct SpectrumEntry {
    int p = 0;
    int q = 0;
    double omega = 0.0;
    std::optional<PeriodicOrbit> orbit;
    std::string error;  // non-empty when the per-entry search failed
};

struct OrbitSearchOptions {
    int rotated_seeds = 8;       // equispaced phase offsets covering one node gap
    int max_newton_iters = 60;
    int max_ascent_passes = 120;
    double residual_tol = 1e-12;     // convergence target of the node angles
    double accept_residual = 1e-10;  // contract bound on the returned orbit
};

/// Critical configuration of the total length with winding p, found by
/// Newton on the reflection-law equations (cyclic tridiagonal Hessian)
/// seeded at rotated equispaced configurations; cyclic coordinate ascent is
/// the fallback when Newton stalls. The longest converged configuration
/// with the right winding wins. Throws SearchError (with the best residual)
/// or WindingError.
PeriodicOrbit find_periodic_orbit(const ConvexDomain& dom, int p, int q,
                                  const std::vector<double>* seed = nullptr,
                                  const OrbitSearchOptions& opts = {});

/// One entry per reduced p/q with q <= q_max and p/q <= 1/2, sorted by
/// rotation number; per-entry failures are recorded, never thrown.
std::vector<SpectrumEntry> marked_length_spectrum(const ConvexDomain& dom, int q_max,
                                                  Exec exec = Exec::parallel,
                                                  const OrbitSearchOptions& opts = {});

BetaSample beta(const ConvexDomain& dom, int p, int q, const OrbitSearchOptions& opts = {});

struct BetaExpansionRow {
    int q = 0;
    double beta_plus_omega = 0.0;
    double r = 0.0;  // ratio to the leading cubic coefficient
};

/// Checks beta(1/q) + 1/q against (C^3/24) q^{-3} on the domain rescaled to
/// unit perimeter; r -> 1 as q grows.
struct BetaExpansionReport {
    double lazutkin_perimeter_unit = 0.0;  // of the rescaled domain
    std::vector<BetaExpansionRow> rows;
    double max_abs_r_minus_1 = 0.0;
};

BetaExpansionReport beta_expansion_check(const ConvexDomain& dom, const std::vector<int>& q_list,
                                         Exec exec = Exec::parallel);

struct AlphaGridOptions {
    int dense_q_max = 40;    // all reduced p/q up to here
    int tail_q_max = 1024;   // geometric 1/q refinement toward omega = 0
    double tail_ratio = 1.15;
};

struct AlphaResult {
    double value = 0.0;
    double omega_star = 0.0;   // abscissa of the refined maximum
    bool edge_warning = false; // maximizer pinned at the sampled range edge
};

/// Legendre conjugate alpha(c) = max_omega (c * omega - beta(omega)),
/// maximized over the sampled grid with local quadratic refinement.
AlphaResult alpha_from_samples(const std::vector<BetaSample>& samples, double c);

std::vector<BetaSample> beta_grid_for_alpha(const ConvexDomain& dom,
                                            const AlphaGridOptions& opts = {},
                                            Exec exec = Exec::parallel);

AlphaResult alpha(const ConvexDomain& dom, double c, const AlphaGridOptions& opts = {},
                  Exec exec = Exec::parallel);

struct RotationEstimate {
    double value = 0.0;
    double error_estimate = 0.0;  // |rho_n - rho_{n/2}|
    bool complete = true;         // false when the iteration grazed early
    std::size_t steps_used = 0;
};

/// Birkhoff average of lifted arc-length increments over n bounces.
RotationEstimate rotation_number(const ConvexDomain& dom, const PhasePoint& p0, std::size_t n);

/// Spectrum CSV: columns p, q, omega, length, beta, residual, status.
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumEntry>& entries,
                        const std::string& header_comment = {});

}  // namespace billiards
