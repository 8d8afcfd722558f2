#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levysup/mc.hpp"

#include <cmath>
#include <cstring>
#include <vector>

using namespace levysup;

namespace {

double kernel_uniform(long, PathStream& s) { return s.uniform(); }

} // namespace

TEST_CASE("serial and parallel reductions are bit-identical") {
    for (long paths : {1000L, 4096L, 10000L, 12289L}) {
        const McStats a = mc_mean(paths, 9, kernel_uniform, /*parallel=*/false);
        const McStats b = mc_mean(paths, 9, kernel_uniform, /*parallel=*/true);
        CHECK(std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0);
        CHECK(std::memcmp(&a.se, &b.se, sizeof(double)) == 0);
        CHECK(a.paths == paths);
    }
}

TEST_CASE("mean and standard error of a uniform kernel") {
    const long N = 300000;
    const McStats st = mc_mean(N, 4, kernel_uniform);
    CHECK(std::fabs(st.mean - 0.5) < 4.0 * st.se);
    // SE should be close to sqrt(1/12/N)
    CHECK(st.se == doctest::Approx(std::sqrt(1.0 / 12.0 / N)).epsilon(0.03));
}

TEST_CASE("result does not depend on block alignment of the path count") {
    // mean over paths [0, N) is a plain average of per-path values, so the
    // first N paths of a longer run reproduce the shorter run exactly
    const long N = 6000;
    std::vector<double> vals(2 * N);
    for_each_path(2 * N, 21, 1, vals.data(),
                  [](long, PathStream& s, double* out) { out[0] = s.uniform(); });
    double sum = 0.0;
    for (long i = 0; i < N; ++i) sum += vals[i];
    const McStats st = mc_mean(N, 21, kernel_uniform);
    // summation order differs (blocked vs straight), allow rounding noise
    CHECK(st.mean == doctest::Approx(sum / N).epsilon(1e-12));
}

TEST_CASE("for_each_path and column_stats agree with mc_mean") {
    const long N = 50000;
    std::vector<double> vals(static_cast<std::size_t>(N) * 2);
    for_each_path(N, 13, 2, vals.data(), [](long, PathStream& s, double* out) {
        const double u = s.uniform();
        out[0] = u;
        out[1] = u * u;
    });
    const McStats c0 = column_stats(vals.data(), N, 2, 0);
    const McStats direct = mc_mean(N, 13, kernel_uniform, /*parallel=*/false);
    // identical draws; only the summation order differs
    CHECK(c0.mean == doctest::Approx(direct.mean).epsilon(1e-13));
    CHECK(c0.se == doctest::Approx(direct.se).epsilon(1e-10));
    const McStats c1 = column_stats(vals.data(), N, 2, 1);
    CHECK(c1.mean == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("stream kinds give independent samples") {
    const long N = 20000;
    const McStats a = mc_mean(N, 2, kernel_uniform, true, StreamKind::path);
    const McStats b = mc_mean(N, 2, kernel_uniform, true, StreamKind::term);
    CHECK(a.mean != b.mean);
    CHECK(std::fabs(a.mean - b.mean) < 5.0 * std::sqrt(a.se * a.se + b.se * b.se));
}
