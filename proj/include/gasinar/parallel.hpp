#ifndef GASINAR_PARALLEL_HPP
#define GASINAR_PARALLEL_HPP

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gasinar {

// Execution mode for the replication / Monte Carlo kernels. Every parallel
// loop in this project derives all randomness from the loop index, writes
// into a pre-sized slot, and reduces serially afterwards, so Serial and
// Parallel produce bit-identical results. Serial is kept as the reference
// implementation for tests and for the kernel benchmark.
enum class Exec { Serial, Parallel };

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs body(i) for i in [0, n). Dynamic schedule: the work items here are
// whole model fits or simulation paths with very uneven cost.
template <typename Body>
void for_each_index(std::size_t n, Exec mode, Body&& body) {
#ifdef _OPENMP
    if (mode == Exec::Parallel && n > 1) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    (void)mode;
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace gasinar

#endif
