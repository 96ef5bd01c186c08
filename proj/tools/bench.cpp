// Timing harness comparing the serial reference sweeps against the
// OpenMP-parallel ones. Results must agree exactly; the table reports the
// speedup per kernel.
#include <chrono>
#include <cstdio>
#include <string>

#include "billiards/geometry.hpp"
#include "billiards/lazutkin.hpp"
#include "billiards/rigidity.hpp"
#include "billiards/spectrum.hpp"

using namespace billiards;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    const ConvexDomain ellipse = build_ellipse(2.0, 1.0);
    const ConvexDomain circle = build_circle(1.0);

    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        std::vector<SpectrumEntry> a, b;
        const double ts = time_ms([&] { a = marked_length_spectrum(ellipse, 18, Exec::serial); });
        const double tp = time_ms([&] { b = marked_length_spectrum(ellipse, 18, Exec::parallel); });
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].orbit.has_value() == b[i].orbit.has_value() &&
                   (!a[i].orbit || a[i].orbit->total_length == b[i].orbit->total_length);
        report("marked_length_spectrum q18", ts, tp, same);
    }
    {
        RigidityReport a, b;
        const double ts = time_ms([&] { a = similarity_test(circle, ellipse, {}, Exec::serial); });
        const double tp = time_ms([&] { b = similarity_test(circle, ellipse, {}, Exec::parallel); });
        report("similarity_test scan", ts, tp,
               a.sup_delta_best == b.sup_delta_best && a.best_offset == b.best_offset);
    }
    {
        NormalFormExponents a, b;
        NormalFormOptions opts;
        opts.x_samples = 128;
        const double ts = time_ms([&] { a = normal_form_exponents(ellipse, opts, Exec::serial); });
        const double tp = time_ms([&] { b = normal_form_exponents(ellipse, opts, Exec::parallel); });
        report("normal_form_exponents x128", ts, tp,
               a.slope_x == b.slope_x && a.slope_y == b.slope_y);
    }
    {
        std::vector<BetaSample> a, b;
        AlphaGridOptions opts;
        opts.tail_q_max = 256;
        const double ts = time_ms([&] { a = beta_grid_for_alpha(ellipse, opts, Exec::serial); });
        const double tp = time_ms([&] { b = beta_grid_for_alpha(ellipse, opts, Exec::parallel); });
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].beta == b[i].beta;
        report("beta_grid_for_alpha q256", ts, tp, same);
    }
    return 0;
}
