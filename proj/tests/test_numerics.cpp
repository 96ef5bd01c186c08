#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "billiards/numerics.hpp"

using namespace billiards;

TEST_CASE("monotone cubic reproduces linear data exactly") {
    std::vector<double> x, y;
    for (int i = 0; i <= 16; ++i) {
        x.push_back(0.25 * i);
        y.push_back(3.0 - 0.5 * x.back());
    }
    num::MonotoneCubic f(x, y);
    for (double t = 0.0; t <= 4.0; t += 0.013)
        CHECK(f(t) == doctest::Approx(3.0 - 0.5 * t).epsilon(1e-13));
}

TEST_CASE("monotone cubic stays monotone on monotone data") {
    std::vector<double> x, y;
    for (int i = 0; i <= 40; ++i) {
        x.push_back(i / 40.0);
        y.push_back(std::tanh(6.0 * (x.back() - 0.5)));  // steep but monotone
    }
    num::MonotoneCubic f(x, y);
    double prev = f(0.0);
    for (double t = 1e-3; t <= 1.0; t += 1e-3) {
        const double v = f(t);
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
}

TEST_CASE("adaptive integral hits tight tolerances") {
    const double v = num::adaptive_integral([](double t) { return std::exp(-t * t); }, 0.0, 2.0,
                                            1e-12, "test");
    CHECK(v == doctest::Approx(0.88208139076242091).epsilon(1e-12));  // sqrt(pi)/2 erf(2)
}

TEST_CASE("cyclic tridiagonal solver matches direct residual check") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {2, 3, 4, 5, 8, 33, 200}) {
        std::vector<double> sub(n), diag(n), sup(n), rhs(n), x;
        for (int k = 0; k < n; ++k) {
            sub[k] = u(rng);
            sup[k] = u(rng);
            diag[k] = 4.0 + u(rng);  // diagonally dominant
            rhs[k] = u(rng);
        }
        REQUIRE(num::solve_cyclic_tridiagonal(sub, diag, sup, rhs, x));
        for (int k = 0; k < n; ++k) {
            const double r =
                sub[k] * x[(k + n - 1) % n] + diag[k] * x[k] + sup[k] * x[(k + 1) % n] - rhs[k];
            CHECK(std::abs(r) < 1e-12);
        }
    }
}

TEST_CASE("golden section finds the maximum") {
    const double t = num::golden_max([](double x) { return -(x - 0.37) * (x - 0.37); }, 0.0, 1.0, 1e-10);
    CHECK(t == doctest::Approx(0.37).epsilon(1e-8));
}

TEST_CASE("line fit recovers slope and intercept") {
    std::vector<double> x{1, 2, 3, 4}, y;
    for (double v : x) y.push_back(2.5 * v - 1.0);
    const auto fit = num::fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-1.0).epsilon(1e-12));
}
