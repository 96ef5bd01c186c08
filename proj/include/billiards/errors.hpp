#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

/// Invalid or non-strictly-convex domain data.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Incidence angle outside the open chart (0, pi); the chord solver is
/// ill-conditioned past the cutoff.
struct GrazingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateChordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NearTangencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature or root-finder failed to reach its tolerance; the message
/// carries the achieved tolerance or bracket diagnostics.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lazutkin chart inversion requested outside the chart range.
struct ChartError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Periodic-orbit search exhausted all seeds and fallbacks.
struct SearchError : std::runtime_error {
    SearchError(const std::string& msg, double best_residual_)
        : std::runtime_error(msg), best_residual(best_residual_) {}
    double best_residual;
};

/// A converged configuration has the wrong winding number.
struct WindingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Value outside the attainable range (e.g. first-integral level sets).
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace billiards
