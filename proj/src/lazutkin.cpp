#include "billiards/lazutkin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "billiards/csv.hpp"
#include "billiards/errors.hpp"
#include "billiards/numerics.hpp"

namespace billiards {

LazutkinPoint to_lazutkin(const ConvexDomain& dom, const PhasePoint& p) {
    const double c = dom.lazutkin_perimeter();
    LazutkinPoint q;
    q.x = dom.lazutkin_abscissa(p.s);
    q.y = 4.0 / c * std::pow(dom.curvature(p.s), -1.0 / 3.0) * std::sin(0.5 * p.phi);
    return q;
}

PhasePoint from_lazutkin(const ConvexDomain& dom, const LazutkinPoint& q) {
    const double c = dom.lazutkin_perimeter();
    PhasePoint p;
    p.s = dom.arclength_of_abscissa(q.x);
    const double arg = 0.25 * c * std::pow(dom.curvature(p.s), 1.0 / 3.0) * q.y;
    if (std::abs(arg) > 1.0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "lazutkin chart: y = %.6e outside range (arcsine arg %.6f)",
                      q.y, arg);
        throw ChartError(buf);
    }
    p.phi = 2.0 * std::asin(arg);
    return p;
}

LazutkinPoint step_lazutkin(const ConvexDomain& dom, const LazutkinPoint& q) {
    return to_lazutkin(dom, step(dom, from_lazutkin(dom, q)));
}

LazutkinStepSample lazutkin_defects(const ConvexDomain& dom, const LazutkinPoint& q) {
    const LazutkinPoint q1 = step_lazutkin(dom, q);
    LazutkinStepSample r;
    r.x = q.x;
    r.y = q.y;
    r.xp = q1.x;
    r.yp = q1.y;
    double lift = q1.x - q.x;
    if (lift < -0.5) lift += 1.0;  // forward increments are small and positive
    r.defect_x = lift - q.y;
    r.defect_y = q1.y - q.y;
    return r;
}

NormalFormExponents normal_form_exponents(const ConvexDomain& dom, const NormalFormOptions& opts,
                                          Exec exec) {
    NormalFormExponents rep;
    const double decades = std::log10(opts.y_max / opts.y_min);
    const int n_y = std::max(2, int(std::lround(decades * opts.points_per_decade)) + 1);
    for (int i = 0; i < n_y; ++i)
        rep.y_grid.push_back(opts.y_min * std::pow(opts.y_max / opts.y_min, double(i) / (n_y - 1)));

    const int nx = opts.x_samples;
    rep.samples.resize(std::size_t(n_y) * nx);
    for_each_index(exec, rep.samples.size(), [&](std::size_t idx) {
        const int iy = int(idx) / nx, ix = int(idx) % nx;
        rep.samples[idx] = lazutkin_defects(dom, {double(ix) / nx, rep.y_grid[iy]});
    });

    rep.mean_defect_x.assign(n_y, 0.0);
    rep.mean_defect_y.assign(n_y, 0.0);
    rep.spread_x.assign(n_y, 0.0);
    rep.spread_y.assign(n_y, 0.0);
    for (int iy = 0; iy < n_y; ++iy) {
        double sx = 0, sy = 0;
        double lox = 1e300, hix = -1e300, loy = 1e300, hiy = -1e300;
        for (int ix = 0; ix < nx; ++ix) {
            const auto& smp = rep.samples[std::size_t(iy) * nx + ix];
            const double ax = std::abs(smp.defect_x), ay = std::abs(smp.defect_y);
            sx += ax;
            sy += ay;
            lox = std::min(lox, ax);
            hix = std::max(hix, ax);
            loy = std::min(loy, ay);
            hiy = std::max(hiy, ay);
        }
        rep.mean_defect_x[iy] = sx / nx;
        rep.mean_defect_y[iy] = sy / nx;
        rep.spread_x[iy] = hix - lox;
        rep.spread_y[iy] = hiy - loy;
    }

    auto fit = [&](const std::vector<double>& defects, double& slope, bool& at_floor) {
        std::vector<double> lx, ly;
        for (int iy = 0; iy < n_y; ++iy) {
            if (defects[iy] < opts.noise_floor) continue;  // exactly integrable direction
            lx.push_back(std::log(rep.y_grid[iy]));
            ly.push_back(std::log(defects[iy]));
        }
        if (lx.size() < 2) {
            at_floor = true;
            slope = 0.0;
            return;
        }
        at_floor = false;
        slope = num::fit_line(lx, ly).slope;
    };
    fit(rep.mean_defect_x, rep.slope_x, rep.x_at_noise_floor);
    fit(rep.mean_defect_y, rep.slope_y, rep.y_at_noise_floor);
    return rep;
}

void write_lazutkin_csv(std::ostream& os, const NormalFormExponents& report,
                        const std::string& header_comment) {
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "x,y,xp,yp,defect_x,defect_y\n";
    for (const auto& s : report.samples) {
        os << csv::g17(s.x) << ',' << csv::g17(s.y) << ',' << csv::g17(s.xp) << ',' << csv::g17(s.yp)
           << ',' << csv::g17(s.defect_x) << ',' << csv::g17(s.defect_y) << "\n";
    }
}

}  // namespace billiards
