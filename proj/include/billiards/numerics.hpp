#pragma once

#include <functional>
#include <vector>

namespace billiards::num {

/// Monotone cubic interpolant (Fritsch-Carlson limited slopes) through
/// strictly increasing abscissas. Used to seed Newton inversions of
/// cumulative-integral tables; the interpolant never overshoots, so the
/// seed always lands in the correct bracket.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_, y_, m_;  // nodes, values, limited slopes
};

/// Adaptive Gauss-Kronrod integral of f over [a, b] to relative tolerance
/// rel_tol. Throws NumericalError (message includes the achieved estimate)
/// when the error estimate does not meet the tolerance.
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, const char* what);

/// Fixed 15-point Gauss-Legendre panel on [a, b].
double gauss15(const std::function<double(double)>& f, double a, double b);

template <typename F>
double gauss15_fn(F&& f, double a, double b);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Solves the cyclically tridiagonal system with sub/diag/super bands
/// (sub[k] multiplies x[k-1 mod n], sup[k] multiplies x[k+1 mod n]).
/// Returns false when the elimination breaks down (singular pivot).
bool solve_cyclic_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                              const std::vector<double>& sup, const std::vector<double>& rhs,
                              std::vector<double>& x);

/// Golden-section maximization of a unimodal f on [a, b] to abscissa
/// tolerance tol. Returns the abscissa of the maximum.
double golden_max(const std::function<double(double)>& f, double a, double b, double tol);

// --- inline fixed-order panel -------------------------------------------

namespace detail {
// 15-point Gauss-Legendre abscissas/weights on [-1, 1] (positive half).
inline constexpr double kGL15Nodes[8] = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601701,
    0.8482065834104272,
    0.9372733924007060,
    0.9879925180204854,
};
inline constexpr double kGL15Weights[8] = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};
// 7-point panel: plenty for sub-table-cell corrections.
inline constexpr double kGL7Nodes[4] = {
    0.0,
    0.4058451513773972,
    0.7415311855993945,
    0.9491079123427585,
};
inline constexpr double kGL7Weights[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892766,
    0.1294849661688697,
};
}  // namespace detail

template <typename F>
double gauss15_fn(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = detail::kGL15Weights[0] * f(c);
    for (int i = 1; i < 8; ++i) {
        const double dx = h * detail::kGL15Nodes[i];
        acc += detail::kGL15Weights[i] * (f(c + dx) + f(c - dx));
    }
    return acc * h;
}

template <typename F>
double gauss7_fn(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = detail::kGL7Weights[0] * f(c);
    for (int i = 1; i < 4; ++i) {
        const double dx = h * detail::kGL7Nodes[i];
        acc += detail::kGL7Weights[i] * (f(c + dx) + f(c - dx));
    }
    return acc * h;
}

}  // namespace billiards::num
