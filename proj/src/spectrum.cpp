#include "billiards/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "billiards/csv.hpp"
#include "billiards/errors.hpp"
#include "billiards/numerics.hpp"

namespace billiards {

namespace {

struct EdgeData {
    double length;
    double cos_dep, sin_dep;
    double cos_arr, sin_arr;
};

EdgeData edge_data(const ConvexDomain& dom, double s0, double s1) {
    const Vec2 P0 = dom.position(s0), P1 = dom.position(s1);
    const Vec2 diff = P1 - P0;
    const double len = norm(diff);
    if (!(len > 1e-14)) throw DegenerateChordError("orbit configuration has coincident nodes");
    const Vec2 e = diff / len;
    const Vec2 T0 = dom.tangent(s0), T1 = dom.tangent(s1);
    return {len, dot(e, T0), cross(T0, e), dot(e, T1), cross(e, T1)};
}

struct Configuration {
    std::vector<double> nodes;  // lifted, strictly increasing, nodes[q] - nodes[0] = p * L implicit
    int p, q;
};

double wrap_gap(double gap, double L) {
    double g = gap - L * std::floor(gap / L);
    if (g <= 0.0) g += L;
    return g;
}

/// Reflection-law residual and total length of a configuration.
struct Evaluation {
    std::vector<EdgeData> edges;  // edge k connects node k -> k+1 (mod q)
    double total_length = 0.0;
    double residual = 0.0;  // max |arrival - departure| node angle defect
};

Evaluation evaluate(const ConvexDomain& dom, const std::vector<double>& s) {
    const int q = int(s.size());
    Evaluation ev;
    ev.edges.reserve(q);
    for (int k = 0; k < q; ++k) {
        ev.edges.push_back(edge_data(dom, dom.wrap(s[k]), dom.wrap(s[(k + 1) % q])));
        ev.total_length += ev.edges.back().length;
    }
    for (int k = 0; k < q; ++k) {
        const EdgeData& in = ev.edges[(k + q - 1) % q];
        const EdgeData& out = ev.edges[k];
        const double arr = std::atan2(in.sin_arr, in.cos_arr);
        const double dep = std::atan2(out.sin_dep, out.cos_dep);
        ev.residual = std::max(ev.residual, std::abs(arr - dep));
    }
    return ev;
}

int winding_of(const ConvexDomain& dom, const std::vector<double>& s) {
    const double L = dom.perimeter();
    double total = 0.0;
    const int q = int(s.size());
    for (int k = 0; k < q; ++k) total += wrap_gap(s[(k + 1) % q] - s[k], L);
    return int(std::lround(total / L));
}

/// One damped Newton pass on the critical-point equations
/// F_k = cos(arrival_k) - cos(departure_k); the Hessian of the total length
/// is cyclic tridiagonal in the node ordering. Trial steps that leave the
/// winding class are rejected (nodes jumping past each other would change
/// the rotation number silently).
bool newton_refine(const ConvexDomain& dom, std::vector<double>& s, int winding,
                   const OrbitSearchOptions& opts, double& out_residual) {
    const int q = int(s.size());
    const double L = dom.perimeter();
    const double min_gap = 1e-9 * L;

    auto defect_max = [&](const Evaluation& ev) {
        double r = 0.0;
        for (int k = 0; k < q; ++k) {
            const EdgeData& in = ev.edges[(k + q - 1) % q];
            const EdgeData& out = ev.edges[k];
            r = std::max(r, std::abs(in.cos_arr - out.cos_dep));
        }
        return r;
    };
    // merit for the line search; the max-norm is not monotone along Newton
    // directions and stalls on longer orbits
    auto defect_sq = [&](const Evaluation& ev) {
        double r = 0.0;
        for (int k = 0; k < q; ++k) {
            const EdgeData& in = ev.edges[(k + q - 1) % q];
            const EdgeData& out = ev.edges[k];
            const double d = in.cos_arr - out.cos_dep;
            r += d * d;
        }
        return r;
    };

    Evaluation ev = evaluate(dom, s);
    double fnorm = defect_max(ev);
    double merit = defect_sq(ev);
    double lm = 0.0;  // Levenberg-Marquardt shift, grown when steps are rejected
    for (int iter = 0; iter < opts.max_newton_iters; ++iter) {
        if (fnorm < opts.residual_tol) break;
        std::vector<double> sub(q), diag(q), sup(q), rhs(q);
        double diag_scale = 0.0;
        for (int k = 0; k < q; ++k) {
            const EdgeData& in = ev.edges[(k + q - 1) % q];
            const EdgeData& out = ev.edges[k];
            const double kap = dom.curvature(s[k]);
            rhs[k] = -(in.cos_arr - out.cos_dep);
            sub[k] = in.sin_dep * in.sin_arr / in.length;
            diag[k] = in.sin_arr * in.sin_arr / in.length - kap * in.sin_arr +
                      out.sin_dep * out.sin_dep / out.length - kap * out.sin_dep;
            sup[k] = out.sin_dep * out.sin_arr / out.length;
            diag_scale = std::max(diag_scale, std::abs(diag[k]));
        }

        bool accepted = false;
        for (int attempt = 0; attempt < 4 && !accepted; ++attempt) {
            std::vector<double> shifted(diag), ds;
            // the shift pulls the step toward steepest descent when the
            // tridiagonal system is near-singular (clustered nodes)
            if (lm > 0.0)
                for (int k = 0; k < q; ++k) shifted[k] -= lm * diag_scale;
            if (num::solve_cyclic_tridiagonal(sub, shifted, sup, rhs, ds)) {
                double damp = 1.0;
                for (int half = 0; half < 8 && !accepted; ++half, damp *= 0.5) {
                    std::vector<double> trial(s);
                    bool feasible = true;
                    for (int k = 0; k < q; ++k) trial[k] += damp * ds[k];
                    for (int k = 0; k < q; ++k) {
                        if (wrap_gap(trial[(k + 1) % q] - trial[k], L) < min_gap) {
                            feasible = false;
                            break;
                        }
                    }
                    if (!feasible || winding_of(dom, trial) != winding) continue;
                    try {
                        Evaluation trial_ev = evaluate(dom, trial);
                        const double trial_merit = defect_sq(trial_ev);
                        if (trial_merit < merit) {
                            s = std::move(trial);
                            ev = std::move(trial_ev);
                            merit = trial_merit;
                            fnorm = defect_max(ev);
                            accepted = true;
                        }
                    } catch (const DegenerateChordError&) {
                        continue;
                    }
                }
            }
            if (!accepted) lm = (lm == 0.0) ? 1e-4 : lm * 100.0;
        }
        if (accepted) {
            lm *= 0.25;
            if (lm < 1e-12) lm = 0.0;
        } else {
            break;
        }
    }
    out_residual = evaluate(dom, s).residual;
    return out_residual <= opts.accept_residual;
}

/// Cyclic coordinate ascent on the total length; each node maximizes the
/// local two-chord length by golden section on the arc between its
/// neighbours. Slow but monotone; used when Newton stalls.
void coordinate_ascent(const ConvexDomain& dom, std::vector<double>& s,
                       const OrbitSearchOptions& opts) {
    const int q = int(s.size());
    const double L = dom.perimeter();
    for (int pass = 0; pass < opts.max_ascent_passes; ++pass) {
        double moved = 0.0;
        for (int k = 0; k < q; ++k) {
            const double prev = s[(k + q - 1) % q];
            // lifted bracket between the neighbours (may exceed one perimeter
            // when the winding is above q/2)
            const double gap_total =
                wrap_gap(s[k] - prev, L) + wrap_gap(s[(k + 1) % q] - s[k], L);
            const double margin = 1e-7 * gap_total;
            auto f = [&](double t) {
                const double cand = prev + t;
                return edge_data(dom, dom.wrap(prev), dom.wrap(cand)).length +
                       edge_data(dom, dom.wrap(cand), dom.wrap(prev + gap_total)).length;
            };
            const double t = num::golden_max(f, margin, gap_total - margin, 1e-12 * L);
            const double cand = prev + t;
            moved = std::max(moved, std::abs(dom.wrap(cand) - dom.wrap(s[k])));
            s[k] = cand;
        }
        if (moved < 1e-13 * L) break;
    }
}

std::vector<double> canonical_nodes(const ConvexDomain& dom, const std::vector<double>& s) {
    std::vector<double> nodes(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) nodes[k] = dom.wrap(s[k]);
    const auto it = std::min_element(nodes.begin(), nodes.end());
    std::rotate(nodes.begin(), it, nodes.end());
    return nodes;
}

}  // namespace

PeriodicOrbit find_periodic_orbit(const ConvexDomain& dom, int p, int q,
                                  const std::vector<double>* seed,
                                  const OrbitSearchOptions& opts) {
    if (q < 2) throw std::invalid_argument("find_periodic_orbit: q must be >= 2");
    if (p < 1 || p >= q) throw std::invalid_argument("find_periodic_orbit: need 1 <= p < q");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("find_periodic_orbit: p/q must be reduced");
    const double L = dom.perimeter();

    std::vector<std::vector<double>> seeds;
    if (seed) {
        if (int(seed->size()) != q) throw std::invalid_argument("seed must have q nodes");
        seeds.push_back(*seed);
    }
    for (int j = 0; j < opts.rotated_seeds; ++j) {
        const double off = double(j) / (double(opts.rotated_seeds) * q);
        // equispaced in arc length and equispaced in the lazutkin abscissa;
        // the latter tracks the true configurations much better on ovals
        std::vector<double> s_arc(q), s_laz(q);
        for (int k = 0; k < q; ++k) {
            const double frac = off + double(k) * p / q;
            s_arc[k] = frac * L;
            s_laz[k] = dom.arclength_of_abscissa(frac - std::floor(frac)) +
                       std::floor(frac) * L;
        }
        seeds.push_back(std::move(s_laz));
        seeds.push_back(std::move(s_arc));
    }

    bool found = false, wrong_winding_seen = false;
    double best_failed_residual = std::numeric_limits<double>::infinity();
    PeriodicOrbit best;
    for (auto& s : seeds) {
        double residual = std::numeric_limits<double>::infinity();
        bool converged = false;
        try {
            converged = newton_refine(dom, s, p, opts, residual);
            if (!converged) {
                coordinate_ascent(dom, s, opts);
                converged = newton_refine(dom, s, p, opts, residual);
            }
        } catch (const DegenerateChordError&) {
            continue;
        }
        if (!converged) {
            best_failed_residual = std::min(best_failed_residual, residual);
            continue;
        }
        if (winding_of(dom, s) != p) {
            wrong_winding_seen = true;  // converged into a different rotation class
            continue;
        }
        const Evaluation ev = evaluate(dom, s);
        if (!found || ev.total_length > best.total_length) {
            found = true;
            best.p = p;
            best.q = q;
            best.nodes = canonical_nodes(dom, s);
            best.total_length = ev.total_length;
            best.residual = ev.residual;
        }
    }
    if (!found) {
        if (wrong_winding_seen)
            throw WindingError("periodic-orbit search: every converged configuration had the wrong winding");
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "periodic-orbit search failed for p/q = %d/%d (best residual %.3e)", p, q,
                      best_failed_residual);
        throw SearchError(buf, best_failed_residual);
    }
    return best;
}

std::vector<SpectrumEntry> marked_length_spectrum(const ConvexDomain& dom, int q_max, Exec exec,
                                                  const OrbitSearchOptions& opts) {
    if (q_max < 2) throw std::invalid_argument("marked_length_spectrum: q_max must be >= 2");
    std::vector<SpectrumEntry> entries;
    for (int q = 2; q <= q_max; ++q)
        for (int p = 1; 2 * p <= q; ++p)
            if (std::gcd(p, q) == 1) entries.push_back({p, q, double(p) / q, std::nullopt, {}});
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.omega < b.omega; });

    for_each_index(exec, entries.size(), [&](std::size_t i) {
        try {
            entries[i].orbit = find_periodic_orbit(dom, entries[i].p, entries[i].q, nullptr, opts);
        } catch (const std::exception& e) {
            entries[i].error = e.what();
        }
    });
    return entries;
}

BetaSample beta(const ConvexDomain& dom, int p, int q, const OrbitSearchOptions& opts) {
    const PeriodicOrbit orbit = find_periodic_orbit(dom, p, q, nullptr, opts);
    BetaSample b;
    b.p = p;
    b.q = q;
    b.omega = double(p) / q;
    b.length = orbit.total_length;
    b.beta = -orbit.total_length / q;
    return b;
}

BetaExpansionReport beta_expansion_check(const ConvexDomain& dom, const std::vector<int>& q_list,
                                         Exec exec) {
    const ConvexDomain unit = rescaled(dom, 1.0 / dom.perimeter());
    BetaExpansionReport rep;
    rep.lazutkin_perimeter_unit = unit.lazutkin_perimeter();
    const double c3_24 = std::pow(rep.lazutkin_perimeter_unit, 3.0) / 24.0;
    rep.rows.resize(q_list.size());
    for_each_index(exec, q_list.size(), [&](std::size_t i) {
        const int q = q_list[i];
        const BetaSample b = beta(unit, 1, q);
        BetaExpansionRow row;
        row.q = q;
        row.beta_plus_omega = b.beta + 1.0 / q;
        row.r = row.beta_plus_omega / (c3_24 / (double(q) * q * q));
        rep.rows[i] = row;
    });
    for (const auto& row : rep.rows)
        rep.max_abs_r_minus_1 = std::max(rep.max_abs_r_minus_1, std::abs(row.r - 1.0));
    return rep;
}

std::vector<BetaSample> beta_grid_for_alpha(const ConvexDomain& dom, const AlphaGridOptions& opts,
                                            Exec exec) {
    std::vector<std::pair<int, int>> pq;
    for (int q = 2; q <= opts.dense_q_max; ++q)
        for (int p = 1; 2 * p <= q; ++p)
            if (std::gcd(p, q) == 1) pq.emplace_back(p, q);
    int q = opts.dense_q_max;
    while (q < opts.tail_q_max) {
        q = int(std::ceil(q * opts.tail_ratio));
        pq.emplace_back(1, q);
    }
    std::vector<BetaSample> samples(pq.size());
    for_each_index(exec, pq.size(), [&](std::size_t i) {
        samples[i] = beta(dom, pq[i].first, pq[i].second);
    });
    std::sort(samples.begin(), samples.end(),
              [](const BetaSample& a, const BetaSample& b) { return a.omega < b.omega; });
    return samples;
}

AlphaResult alpha_from_samples(const std::vector<BetaSample>& samples, double c) {
    if (samples.size() < 3) throw std::invalid_argument("alpha: need at least 3 beta samples");
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double v = c * samples[i].omega - samples[i].beta;
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    AlphaResult r;
    if (best == 0 || best + 1 == samples.size()) {
        r.value = best_val;
        r.omega_star = samples[best].omega;
        r.edge_warning = true;
        return r;
    }
    // parabola through the argmax triple; vertex value refines the maximum
    const double x1 = samples[best - 1].omega, x2 = samples[best].omega, x3 = samples[best + 1].omega;
    const double y1 = c * x1 - samples[best - 1].beta;
    const double y2 = best_val;
    const double y3 = c * x3 - samples[best + 1].beta;
    const double denom = (x1 - x2) * (x1 - x3) * (x2 - x3);
    const double A = (x3 * (y2 - y1) + x2 * (y1 - y3) + x1 * (y3 - y2)) / denom;
    const double B = (x3 * x3 * (y1 - y2) + x2 * x2 * (y3 - y1) + x1 * x1 * (y2 - y3)) / denom;
    double xv = (A < 0.0) ? std::clamp(-B / (2.0 * A), x1, x3) : x2;
    const double C0 = y2 - A * x2 * x2 - B * x2;
    r.value = A * xv * xv + B * xv + C0;
    r.omega_star = xv;
    r.edge_warning = false;
    return r;
}

AlphaResult alpha(const ConvexDomain& dom, double c, const AlphaGridOptions& opts, Exec exec) {
    return alpha_from_samples(beta_grid_for_alpha(dom, opts, exec), c);
}

RotationEstimate rotation_number(const ConvexDomain& dom, const PhasePoint& p0, std::size_t n) {
    if (n < 100) throw std::invalid_argument("rotation_number: n must be >= 100");
    const double L = dom.perimeter();
    RotationEstimate est;
    PhasePoint p{dom.wrap(p0.s), p0.phi};
    double lift = 0.0, half_value = 0.0;
    std::size_t k = 0;
    for (; k < n; ++k) {
        PhasePoint q;
        try {
            q = step(dom, p);
        } catch (const std::exception&) {
            est.complete = false;
            break;
        }
        lift += wrap_gap(q.s - p.s, L);
        p = q;
        if (k + 1 == n / 2) half_value = lift / (L * double(n / 2));
    }
    est.steps_used = k;
    if (k == 0) throw GrazingError("rotation_number: no steps completed");
    est.value = lift / (L * double(k));
    if (k >= n / 2 && n / 2 > 0)
        est.error_estimate = std::abs(est.value - half_value);
    else
        est.error_estimate = std::numeric_limits<double>::infinity();
    return est;
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumEntry>& entries,
                        const std::string& header_comment) {
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "p,q,omega,length,beta,residual,status\n";
    for (const auto& e : entries) {
        os << e.p << ',' << e.q << ',' << csv::g17(e.omega) << ',';
        if (e.orbit) {
            os << csv::g17(e.orbit->total_length) << ',' << csv::g17(-e.orbit->total_length / e.q)
               << ',' << csv::g17(e.orbit->residual) << ",ok\n";
        } else {
            os << "nan,nan,nan,failed\n";
        }
    }
}

}  // namespace billiards
