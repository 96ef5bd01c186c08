#include "billiards/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "billiards/errors.hpp"

namespace billiards::num {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 nodes");
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = x_[i + 1] - x_[i];
        if (!(h > 0.0)) throw std::invalid_argument("MonotoneCubic: abscissas not increasing");
        d[i] = (y_[i + 1] - y_[i]) / h;
    }
    m_.assign(n, 0.0);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m_[i] = 0.0;
        } else {
            // harmonic-mean slope limiter (Fritsch-Carlson)
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            const double w0 = 2.0 * h1 + h0, w1 = h1 + 2.0 * h0;
            m_[i] = (w0 + w1) / (w0 / d[i - 1] + w1 / d[i]);
        }
    }
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front()) return y_.front() + m_.front() * (x - x_.front());
    if (x >= x_.back()) return y_.back() + m_.back() * (x - x_.back());
    std::size_t lo = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
    if (lo >= n - 1) lo = n - 2;
    const double h = x_[lo + 1] - x_[lo];
    const double t = (x - x_[lo]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[lo + 1] + h11 * h * m_[lo + 1];
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, const char* what) {
    double err = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, rel_tol, &err);
    const double scale = std::max(1.0, std::abs(value));
    if (!(err <= 100.0 * rel_tol * scale) || !std::isfinite(value)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: quadrature did not converge (achieved %.3e, wanted %.3e)",
                      what, err / scale, rel_tol);
        throw NumericalError(buf);
    }
    return value;
}

double gauss15(const std::function<double(double)>& f, double a, double b) {
    return gauss15_fn(f, a, b);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

bool solve_cyclic_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                              const std::vector<double>& sup, const std::vector<double>& rhs,
                              std::vector<double>& x) {
    const std::size_t n = diag.size();
    x.assign(n, 0.0);
    if (n == 0) return true;
    if (n <= 3) {
        // assemble densely; the cyclic corners overlap the band for n <= 3
        double A[3][4] = {};
        for (std::size_t k = 0; k < n; ++k) {
            A[k][(k + n - 1) % n] += sub[k];
            A[k][k] += diag[k];
            A[k][(k + 1) % n] += sup[k];
            A[k][n] = rhs[k];
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            for (std::size_t r = c + 1; r < n; ++r)
                if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
            if (A[piv][c] == 0.0) return false;
            for (std::size_t j = 0; j <= n; ++j) std::swap(A[c][j], A[piv][j]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c) continue;
                const double f = A[r][c] / A[c][c];
                for (std::size_t j = c; j <= n; ++j) A[r][j] -= f * A[c][j];
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            x[k] = A[k][n] / A[k][k];
            if (!std::isfinite(x[k])) return false;
        }
        return true;
    }

    // Sherman-Morrison: write the matrix as T + u v^T with corner entries
    // M[0][n-1] = sub[0], M[n-1][0] = sup[n-1];
    // u = (gamma, 0, ..., 0, sup[n-1])^T, v = (1, 0, ..., 0, sub[0]/gamma)^T.
    const double gamma = (diag[0] != 0.0) ? -diag[0] : 1.0;
    std::vector<double> b(diag), u(n, 0.0);
    b[0] -= gamma;
    b[n - 1] -= sup[n - 1] * sub[0] / gamma;
    u[0] = gamma;
    u[n - 1] = sup[n - 1];

    auto thomas = [&](const std::vector<double>& d, std::vector<double>& out) -> bool {
        std::vector<double> c(n, 0.0), dd(n, 0.0);
        double beta = b[0];
        if (beta == 0.0) return false;
        c[0] = sup[0] / beta;
        dd[0] = d[0] / beta;
        for (std::size_t k = 1; k < n; ++k) {
            beta = b[k] - sub[k] * c[k - 1];
            if (beta == 0.0) return false;
            c[k] = (k + 1 < n ? sup[k] : 0.0) / beta;
            dd[k] = (d[k] - sub[k] * dd[k - 1]) / beta;
        }
        out[n - 1] = dd[n - 1];
        for (std::size_t k = n - 1; k-- > 0;) out[k] = dd[k] - c[k] * out[k + 1];
        return true;
    };

    std::vector<double> y(n), z(n);
    if (!thomas(rhs, y) || !thomas(u, z)) return false;
    const double vy = y[0] + (sub[0] / gamma) * y[n - 1];
    const double vz = 1.0 + z[0] + (sub[0] / gamma) * z[n - 1];
    if (vz == 0.0) return false;
    const double f = vy / vz;
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = y[k] - f * z[k];
        if (!std::isfinite(x[k])) return false;
    }
    return true;
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace billiards::num
