#pragma once

#include "levysup/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace levysup {

struct McParams {
    long paths = 100000;
    std::uint64_t seed = 1;
};

struct McStats {
    double mean = 0.0;
    double se = 0.0;
    long paths = 0;
};

inline constexpr long kMcBlock = 4096;

// Monte Carlo mean with a deterministic reduction: paths are summed serially
// inside fixed blocks and the block partials combined in index order, so the
// result is bit-identical for any worker count. The serial reference
// (parallel = false) runs the exact same block structure.
template <class F>
McStats mc_mean(long paths, std::uint64_t seed, F&& f, bool parallel = true,
                StreamKind kind = StreamKind::path) {
    const long nblocks = (paths + kMcBlock - 1) / kMcBlock;
    std::vector<double> bsum(nblocks, 0.0), bsq(nblocks, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (long b = 0; b < nblocks; ++b) {
        const long lo = b * kMcBlock;
        const long hi = lo + kMcBlock < paths ? lo + kMcBlock : paths;
        double s = 0.0, s2 = 0.0;
        for (long i = lo; i < hi; ++i) {
            PathStream stream(seed, static_cast<std::uint64_t>(i), kind);
            const double x = f(i, stream);
            s += x;
            s2 += x * x;
        }
        bsum[b] = s;
        bsq[b] = s2;
    }
    double sum = 0.0, sq = 0.0;
    for (long b = 0; b < nblocks; ++b) {
        sum += bsum[b];
        sq += bsq[b];
    }
    McStats st;
    st.paths = paths;
    st.mean = sum / paths;
    const double var = (sq - sum * sum / paths) / (paths - 1);
    st.se = std::sqrt(var > 0.0 ? var / paths : 0.0);
    return st;
}

// Fills out[i*dim + j] per path; embarrassingly parallel and deterministic
// since every path owns its slots. Used where estimators need the per-path
// sample afterwards (common-random-number studies).
template <class F>
void for_each_path(long paths, std::uint64_t seed, int dim, double* out, F&& f,
                   bool parallel = true, StreamKind kind = StreamKind::path) {
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < paths; ++i) {
        PathStream stream(seed, static_cast<std::uint64_t>(i), kind);
        f(i, stream, out + static_cast<std::size_t>(i) * dim);
    }
}

// mean/SE of a stored per-path column, deterministic (serial, index order)
inline McStats column_stats(const double* data, long paths, int dim, int col) {
    double sum = 0.0, sq = 0.0;
    for (long i = 0; i < paths; ++i) {
        const double x = data[static_cast<std::size_t>(i) * dim + col];
        sum += x;
        sq += x * x;
    }
    McStats st;
    st.paths = paths;
    st.mean = sum / paths;
    const double var = (sq - sum * sum / paths) / (paths - 1);
    st.se = std::sqrt(var > 0.0 ? var / paths : 0.0);
    return st;
}

} // namespace levysup
