#pragma once

// OpenMP execution policy for the hot kernels.  Every kernel has a serial
// reference path and an OpenMP path that perform the same floating-point
// operations in the same order, so results are bit-identical for any thread
// count.  Reductions go through fixed-size chunks (chunk partials are summed
// serially in chunk order) to keep the summation order independent of the
// schedule.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace heliox::par {

enum class Exec { serial, openmp };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Kernels this small are not worth a fork/join; single solves stay serial
// (sweep-level parallelism is share-nothing on top of them).
inline constexpr std::size_t kParallelThreshold = 1u << 14;

inline Exec default_exec(std::size_t work_items) {
#ifdef _OPENMP
    if (work_items >= kParallelThreshold && !omp_in_parallel()) return Exec::openmp;
#endif
    (void)work_items;
    return Exec::serial;
}

template <class F>
void parallel_for(Exec exec, std::ptrdiff_t n, F&& body) {
    if (exec == Exec::openmp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        return;
#endif
    }
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

inline constexpr std::ptrdiff_t kChunk = 1024;

// sum_i term(i), deterministic across Exec and thread count
template <class F>
double chunked_sum(Exec exec, std::ptrdiff_t n, F&& term) {
    const std::ptrdiff_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
    parallel_for(exec, nchunks, [&](std::ptrdiff_t c) {
        const std::ptrdiff_t lo = c * kChunk;
        const std::ptrdiff_t hi = lo + kChunk < n ? lo + kChunk : n;
        double s = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(c)] = s;
    });
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

} // namespace heliox::par
