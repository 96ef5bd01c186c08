#include "billiards/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "billiards/csv.hpp"
#include "billiards/errors.hpp"
#include "billiards/numerics.hpp"

namespace billiards {

namespace {

double delta_at(const ConvexDomain& a, const ConvexDomain& b, double s, double offset) {
    const double ka = a.curvature(s);
    const double kda = a.curvature_deriv(s);
    const double x = a.lazutkin_abscissa(s) + offset;
    const double sh = b.arclength_of_abscissa(x);
    const double kb = b.curvature(sh);
    const double kdb = b.curvature_deriv(sh);
    const double dsh = (b.lazutkin_perimeter() / a.lazutkin_perimeter()) *
                       std::pow(ka / kb, 2.0 / 3.0);
    // (1/3) kA^2 d/ds [kB^{-2}(shat) - kA^{-2}] expanded by the chain rule
    return (2.0 / 3.0) * ka * ka * (kda / (ka * ka * ka) - kdb / (kb * kb * kb) * dsh);
}

double sup_delta(const ConvexDomain& a, const ConvexDomain& b, double offset, int n) {
    double m = 0.0;
    const double L = a.perimeter();
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(delta_at(a, b, i * L / n, offset)));
    return m;
}

ConvexDomain match_lazutkin_perimeter(const ConvexDomain& a, const ConvexDomain& b,
                                      double* factor_out) {
    // scaling by u multiplies the Lazutkin perimeter by u^(1/3)
    const double u = std::pow(a.lazutkin_perimeter() / b.lazutkin_perimeter(), 3.0);
    if (factor_out) *factor_out = u;
    return rescaled(b, u);
}

}  // namespace

BoundaryMatch::BoundaryMatch(ConvexDomain dom_a, ConvexDomain dom_b, double offset)
    : a_(std::move(dom_a)), b_(std::move(dom_b)), offset_(offset) {}

double BoundaryMatch::map(double s) const {
    const double La = a_.perimeter(), Lb = b_.perimeter();
    const double wraps = std::floor(s / La);
    const double sw = s - wraps * La;
    double u = a_.lazutkin_abscissa(sw) + offset_;
    const double lift = std::floor(u);
    return b_.arclength_of_abscissa(u - lift) + (lift + wraps) * Lb;
}

double BoundaryMatch::derivative(double s) const {
    const double sh = map(s);
    return (b_.lazutkin_perimeter() / a_.lazutkin_perimeter()) *
           std::pow(a_.curvature(s) / b_.curvature(sh), 2.0 / 3.0);
}

BoundaryMatch boundary_match(const ConvexDomain& dom_a, const ConvexDomain& dom_b, double offset) {
    return BoundaryMatch(dom_a, dom_b, offset);
}

double delta_function(const ConvexDomain& dom_a, const ConvexDomain& dom_b, double s,
                      double offset) {
    const ConvexDomain b = match_lazutkin_perimeter(dom_a, dom_b, nullptr);
    return delta_at(dom_a, b, s, offset);
}

RigidityReport similarity_test(const ConvexDomain& dom_a, const ConvexDomain& dom_b,
                               const RigidityOptions& opts, Exec exec) {
    RigidityReport rep;
    const ConvexDomain b = match_lazutkin_perimeter(dom_a, dom_b, &rep.rescale_factor_b);
    const double La = dom_a.perimeter();

    // coarse offset scan (pure evaluations, embarrassingly parallel)
    std::vector<double> sup(opts.offset_samples);
    for_each_index(exec, sup.size(), [&](std::size_t j) {
        sup[j] = sup_delta(dom_a, b, double(j) / opts.offset_samples, opts.s_samples);
    });
    std::size_t best_j = 0;
    rep.min_sup_delta_scan = sup[0];
    for (std::size_t j = 1; j < sup.size(); ++j) {
        if (sup[j] < sup[best_j]) best_j = j;
        rep.min_sup_delta_scan = std::min(rep.min_sup_delta_scan, sup[j]);
    }

    // golden-section refinement of the best offset
    const double cell = 1.0 / opts.offset_samples;
    const double lo = double(best_j) / opts.offset_samples - cell;
    const double hi = double(best_j) / opts.offset_samples + cell;
    rep.best_offset = num::golden_max(
        [&](double off) { return -sup_delta(dom_a, b, off, opts.s_samples); }, lo, hi,
        opts.offset_refine_tol);
    rep.best_offset -= std::floor(rep.best_offset);
    rep.sup_delta_best = sup_delta(dom_a, b, rep.best_offset, opts.s_samples);
    rep.min_sup_delta_scan = std::min(rep.min_sup_delta_scan, rep.sup_delta_best);

    // alpha fit and report grids at the best offset
    rep.s_grid.resize(opts.s_samples);
    rep.shat.resize(opts.s_samples);
    rep.delta.resize(opts.s_samples);
    double mean = 0.0;
    std::vector<double> diff(opts.s_samples);
    for (int i = 0; i < opts.s_samples; ++i) {
        const double s = i * La / opts.s_samples;
        rep.s_grid[i] = s;
        const double x = dom_a.lazutkin_abscissa(s) + rep.best_offset;
        const double sh = b.arclength_of_abscissa(x);
        rep.shat[i] = sh;
        rep.delta[i] = delta_at(dom_a, b, s, rep.best_offset);
        const double ka = dom_a.curvature(s), kb = b.curvature(sh);
        diff[i] = 1.0 / (kb * kb) - 1.0 / (ka * ka);
        mean += diff[i];
    }
    mean /= opts.s_samples;
    double var = 0.0;
    for (double d : diff) var += (d - mean) * (d - mean);
    rep.alpha_const = mean;
    rep.alpha_residual = std::sqrt(var / opts.s_samples);

    // the integrand's base 1 + alpha k^2 can go negative for strongly
    // dissimilar pairs (alpha < 0); the integral is undefined there
    double base_min = 1.0;
    for (int i = 0; i < opts.s_samples; ++i) {
        const double k = dom_a.curvature(i * La / opts.s_samples);
        base_min = std::min(base_min, 1.0 + rep.alpha_const * k * k);
    }
    if (base_min > 0.0) {
        rep.step7_integral = num::adaptive_integral(
            [&](double s) {
                const double k = dom_a.curvature(s);
                return k * (std::pow(1.0 + rep.alpha_const * k * k, -5.0 / 6.0) - 1.0);
            },
            0.0, La, 1e-9, "step-7 integral");
    } else {
        rep.step7_integral = std::numeric_limits<double>::quiet_NaN();
    }

    if (rep.sup_delta_best <= opts.tol_delta && rep.alpha_residual <= opts.tol_alpha)
        rep.verdict = Verdict::similar;
    else if (rep.min_sup_delta_scan >= opts.not_similar_factor * opts.tol_delta)
        rep.verdict = Verdict::not_similar;
    else
        rep.verdict = Verdict::inconclusive;
    return rep;
}

void write_rigidity_csv(std::ostream& os, const RigidityReport& report,
                        const std::string& header_comment) {
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "s,shat,delta\n";
    for (std::size_t i = 0; i < report.s_grid.size(); ++i)
        os << csv::g17(report.s_grid[i]) << ',' << csv::g17(report.shat[i]) << ','
           << csv::g17(report.delta[i]) << "\n";
}

std::string render_rigidity_report(const RigidityReport& r) {
    std::ostringstream os;
    const char* verdict = r.verdict == Verdict::similar       ? "similar"
                          : r.verdict == Verdict::not_similar ? "not_similar"
                                                              : "inconclusive";
    os << "verdict: " << verdict << "\n";
    os << "rescale factor applied to B: " << csv::g17(r.rescale_factor_b) << "\n";
    os << "best offset (lazutkin abscissa): " << csv::g17(r.best_offset) << "\n";
    os << "sup|Delta| at best offset: " << csv::g17(r.sup_delta_best) << "\n";
    os << "min sup|Delta| over scan: " << csv::g17(r.min_sup_delta_scan) << "\n";
    os << "alpha: " << csv::g17(r.alpha_const) << " (residual " << csv::g17(r.alpha_residual)
       << ")\n";
    os << "step-7 integral: " << csv::g17(r.step7_integral) << "\n";
    return os.str();
}

}  // namespace billiards
