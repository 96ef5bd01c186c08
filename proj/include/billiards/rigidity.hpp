#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/parallel.hpp"

namespace billiards {

/// Boundary-matching map shat(s) defined by matching normalized Lazutkin
/// abscissas: x_A(s) + offset = x_B(shat) (mod 1), lifted so shat is
/// strictly increasing with shat(s + L_A) = shat(s) + L_B. The derivative
/// is analytic: dshat/ds = (C_B/C_A) * (kappa_A(s)/kappa_B(shat))^(2/3).
/// No rescaling is applied here; the caller chooses both base points.
class BoundaryMatch {
public:
    BoundaryMatch(ConvexDomain dom_a, ConvexDomain dom_b, double offset = 0.0);

    double map(double s) const;
    double derivative(double s) const;
    double offset() const { return offset_; }

private:
    ConvexDomain a_, b_;
    double offset_;
};

BoundaryMatch boundary_match(const ConvexDomain& dom_a, const ConvexDomain& dom_b,
                             double offset = 0.0);

/// Rigidity obstruction
///   Delta(s) = (1/3) kappa_A^2(s) d/ds [ kappa_B^{-2}(shat(s)) - kappa_A^{-2}(s) ],
/// evaluated with analytic curvature derivatives and the analytic dshat/ds
/// (no numerical differentiation). domB is internally rescaled so the two
/// Lazutkin perimeters match; similar pairs then give Delta identically
/// zero at the matched offset.
double delta_function(const ConvexDomain& dom_a, const ConvexDomain& dom_b, double s,
                      double offset = 0.0);

enum class Verdict { similar, not_similar, inconclusive };

struct RigidityOptions {
    int offset_samples = 64;
    int s_samples = 256;
    double tol_delta = 1e-6;
    double tol_alpha = 1e-8;
    double not_similar_factor = 100.0;  // margin against borderline misclassification
    double offset_refine_tol = 1e-12;
};

struct RigidityReport {
    std::vector<double> s_grid;
    std::vector<double> shat;
    std::vector<double> delta;
    double alpha_const = 0.0;     // mean of kappa_B^{-2}(shat) - kappa_A^{-2}(s)
    double alpha_residual = 0.0;  // standard deviation of the same samples
    double step7_integral = 0.0;  // integral of kA [(1 + alpha kA^2)^{-5/6} - 1] ds
    double best_offset = 0.0;
    double sup_delta_best = 0.0;
    double min_sup_delta_scan = 0.0;  // minimum over every scanned offset
    double rescale_factor_b = 1.0;
    Verdict verdict = Verdict::inconclusive;
};

/// Scans base-point offsets for the alignment minimizing sup|Delta|, fits
/// the constant alpha at the best offset and assembles the verdict:
/// similar when sup|Delta| and the alpha residual are inside tolerance,
/// not_similar when sup|Delta| clears 100x tolerance at every offset,
/// inconclusive otherwise (a value, not an error).
RigidityReport similarity_test(const ConvexDomain& dom_a, const ConvexDomain& dom_b,
                               const RigidityOptions& opts = {}, Exec exec = Exec::parallel);

/// Report CSV: columns s, shat, delta (at the best offset).
void write_rigidity_csv(std::ostream& os, const RigidityReport& report,
                        const std::string& header_comment = {});

std::string render_rigidity_report(const RigidityReport& report);

}  // namespace billiards
