#pragma once

#include <cstddef>
#include <exception>

namespace billiards {

/// Execution policy for the embarrassingly parallel sweeps (spectrum
/// entries, rigidity offset scans, defect grids). The serial path is the
/// reference implementation; both paths fill per-index slots, so results
/// are identical regardless of thread count.
enum class Exec { serial, parallel };

template <typename F>
void for_each_index(Exec mode, std::size_t n, F&& body) {
    if (mode == Exec::serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(billiards_for_each_index_err)
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    }
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace billiards
