#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levysup/levy_model.hpp"
#include "levysup/mc.hpp"
#include "levysup/path_sim.hpp"
#include "levysup/spitzer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace levysup;

namespace {

LevyModel merton() {
    LevyModel m;
    m.gamma = 0.1;
    m.sigma = 0.2;
    m.jumps = CompoundPoisson{3.0, NormalJump{-0.05, 0.1}};
    return m;
}

LevyModel vg_model() {
    LevyModel m;
    m.jumps = VarianceGamma{-0.1, 0.2, 0.3};
    return m;
}

} // namespace

TEST_CASE("bridge maximum basics") {
    // u -> 1 collapses onto the endpoint maximum
    CHECK(bridge_max(0.0, 0.0, 1.0, 1.0 - 1e-15) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(bridge_max(0.3, -0.2, 1.0, 1.0 - 1e-15) ==
          doctest::Approx(0.3).epsilon(1e-6));
    for (double u : {0.1, 0.5, 0.9}) {
        const double m = bridge_max(0.2, 0.7, 0.5, u);
        CHECK(m >= 0.7);
    }
    // smaller u means a higher excursion
    CHECK(bridge_max(0.2, 0.7, 0.5, 0.1) > bridge_max(0.2, 0.7, 0.5, 0.9));
}

TEST_CASE("bridge maximum law: P(M > m) = exp(-2 m^2 / var) for a flat bridge") {
    const long N = 50000;
    PathStream s(17, 0);
    std::vector<double> draws(N);
    for (long i = 0; i < N; ++i) draws[i] = bridge_max(0.0, 0.0, 1.0, s.uniform());
    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    for (long i = 0; i < N; ++i) {
        const double F = 1.0 - std::exp(-2.0 * draws[i] * draws[i]);
        const double lo = static_cast<double>(i) / N;
        const double hi = static_cast<double>(i + 1) / N;
        ks = std::max(ks, std::max(std::fabs(F - lo), std::fabs(F - hi)));
    }
    // 1% critical value 1.628/sqrt(N)
    CHECK(ks < 1.628 / std::sqrt(static_cast<double>(N)));
}

TEST_CASE("grid simulation matches Brownian terminal moments") {
    LevyModel bm;
    bm.gamma = 0.3;
    bm.sigma = 0.5;
    const long N = 20000;
    const McStats st = mc_mean(N, 5, [&](long, PathStream& stream) {
        const PathGrid g = simulate_grid(bm, 2.0, 16, stream);
        REQUIRE(g.times.size() == 17);
        REQUIRE(g.values.size() == 17);
        CHECK(g.values[0] == 0.0);
        CHECK(g.times.back() == doctest::Approx(2.0));
        return g.values.back();
    });
    CHECK(std::fabs(st.mean - 0.6) < 4.0 * st.se); // E X_2 = 0.3 * 2
}

TEST_CASE("vg increments match mean and variance") {
    const auto m = vg_model();
    const double dt = 0.25;
    const long N = 200000;
    std::vector<double> xs(N);
    for_each_path(N, 3, 1, xs.data(), [&](long, PathStream& s, double* out) {
        out[0] = sample_increment(m, dt, s);
    });
    const McStats st = column_stats(xs.data(), N, 1, 0);
    CHECK(std::fabs(st.mean - mean_rate(m) * dt) < 4.0 * st.se);
    double sq = 0.0;
    for (double x : xs) sq += (x - st.mean) * (x - st.mean);
    const double var = sq / (N - 1);
    // Var X_dt = (sigma_vg^2 + theta^2 nu) dt
    const double want = (0.04 + 0.01 * 0.3) * dt;
    CHECK(var == doctest::Approx(want).epsilon(0.03));
}

TEST_CASE("stable increments match the characteristic function") {
    LevyModel m;
    m.jumps = StableJumps{1.5, 0.7, 0.3};
    const double dt = 0.5;
    const long N = 200000;
    std::vector<double> xs(N);
    for_each_path(N, 9, 1, xs.data(), [&](long, PathStream& s, double* out) {
        out[0] = sample_increment(m, dt, s);
    });
    for (double u : {0.5, 1.0, 2.0}) {
        std::complex<double> acc = 0.0;
        for (double x : xs) acc += std::exp(std::complex<double>(0.0, u * x));
        acc /= static_cast<double>(N);
        const auto want = std::exp(dt * char_exponent(m, u));
        // each of cos/sin is bounded, SE <= 1/sqrt(N)
        CHECK(std::abs(acc - want) < 6.0 / std::sqrt(static_cast<double>(N)));
    }
}

TEST_CASE("jump-diffusion supremum sample invariants") {
    const auto m = merton();
    PathStream s(21, 4);
    std::vector<double> grid;
    for (int rep = 0; rep < 200; ++rep) {
        const SupremumSample x = simulate_jd_supremum(m, 1.0, 12, s, &grid);
        REQUIRE(grid.size() == 12);
        CHECK(grid.back() == doctest::Approx(x.terminal));
        CHECK(x.exactness == Exactness::exact);
        REQUIRE(x.continuous_max.has_value());
        REQUIRE(x.continuous_min.has_value());
        CHECK(x.discrete_max >= 0.0);
        CHECK(x.discrete_max >= x.terminal);
        CHECK(*x.continuous_max >= x.discrete_max);
        CHECK(*x.continuous_min <= x.discrete_min);
        CHECK(x.discrete_min <= 0.0);
        const double dmax = *std::max_element(grid.begin(), grid.end());
        CHECK(x.discrete_max == doctest::Approx(std::max(dmax, 0.0)));
    }
}

TEST_CASE("discrete supremum mean agrees with the Spitzer engine") {
    const auto m = merton();
    const long n = 12;
    const McStats st = mc_mean(60000, 11, [&](long, PathStream& stream) {
        return simulate_jd_supremum(m, 1.0, n, stream).discrete_max;
    });
    const double want = discrete_sup_mean(m, 1.0, n);
    CHECK(std::fabs(st.mean - want) < 4.0 * st.se);
}

TEST_CASE("continuous supremum mean agrees with the Spitzer engine") {
    const auto m = merton();
    const McStats st = mc_mean(60000, 13, [&](long, PathStream& stream) {
        return *simulate_jd_supremum(m, 1.0, 4, stream).continuous_max;
    });
    const double want = continuous_sup_mean(m, 1.0);
    CHECK(std::fabs(st.mean - want) < 4.0 * st.se);
}

TEST_CASE("fine-grid supremum brackets the coarse grid") {
    const auto m = vg_model();
    PathStream s(31, 2);
    for (int rep = 0; rep < 100; ++rep) {
        const SupremumSample x = fine_grid_supremum(m, 1.0, 8, 16, s);
        CHECK(x.exactness == Exactness::fine_grid_biased);
        REQUIRE(x.continuous_max.has_value());
        CHECK(*x.continuous_max >= x.discrete_max);
        CHECK(*x.continuous_min <= x.discrete_min);
        CHECK(x.discrete_max >= std::max(x.terminal, 0.0));
    }
}

TEST_CASE("discretization bias bound dominates the true gap") {
    for (const auto& m : {merton(), vg_model()}) {
        for (long n : {64L, 512L}) {
            const double bound = discretization_bias_bound(m, 1.0, n);
            const double gap = gap_mean(m, 1.0, n).gap;
            CHECK(bound >= gap);
            CHECK(bound < 50.0 * gap + 1e-3); // not absurdly loose
        }
    }
}
