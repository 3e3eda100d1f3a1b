#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace invlab {

// Deterministic chunked reductions. Work is split into fixed-size chunks; each
// chunk is accumulated left-to-right and the per-chunk partials are combined in
// chunk order. The floating-point result is therefore identical for any thread
// count, including the serial build.

inline constexpr std::uint64_t kChunk = 4096;

template <typename F>
std::complex<double> chunked_sum_c(std::uint64_t n, F&& term) {
    if (n == 0) return {0.0, 0.0};
    const std::uint64_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<std::complex<double>> partial(nchunks, {0.0, 0.0});
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
        const std::uint64_t hi = std::min(n, lo + kChunk);
        std::complex<double> acc(0.0, 0.0);
        for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    std::complex<double> total(0.0, 0.0);
    for (const auto& p : partial) total += p;
    return total;
}

template <typename F>
double chunked_sum_d(std::uint64_t n, F&& term) {
    if (n == 0) return 0.0;
    const std::uint64_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
        const std::uint64_t hi = std::min(n, lo + kChunk);
        double acc = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

/// Parallel for over [0, n); body(i) must only touch state owned by index i.
template <typename F>
void parallel_for(std::uint64_t n, F&& body) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        body(static_cast<std::uint64_t>(i));
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace invlab
