#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levysup/errors.hpp"
#include "levysup/levy_model.hpp"
#include "levysup/math.hpp"

#include <cmath>
#include <complex>

using namespace levysup;

namespace {

LevyModel merton() {
    LevyModel m;
    m.gamma = 0.1;
    m.sigma = 0.2;
    m.jumps = CompoundPoisson{3.0, NormalJump{-0.05, 0.1}};
    return m;
}

LevyModel kou() {
    LevyModel m;
    m.sigma = 0.15;
    m.jumps = CompoundPoisson{2.0, DoubleExponentialJump{0.4, 10.0, 8.0}};
    return m;
}

LevyModel vg_model() {
    LevyModel m;
    m.jumps = VarianceGamma{-0.1, 0.2, 0.3};
    return m;
}

LevyModel stable_model() {
    LevyModel m;
    m.jumps = StableJumps{1.5, 1.0, 0.3};
    return m;
}

// E X_1 = Im phi'(0), central difference
double mean_rate_numeric(const LevyModel& m) {
    const double h = 1e-5;
    return (char_exponent(m, h) - char_exponent(m, -h)).imag() / (2.0 * h);
}

} // namespace

TEST_CASE("jump law moments") {
    const NormalJump nj{-0.05, 0.1};
    CHECK(jump_mean(nj) == doctest::Approx(-0.05));
    CHECK(jump_mean_pos(nj) ==
          doctest::Approx(gaussian_positive_part_mean(-0.05, 0.01)).epsilon(1e-14));
    CHECK(jump_mean_abs(nj) ==
          doctest::Approx(jump_mean_pos(nj) + jump_mean_pos(NormalJump{0.05, 0.1}))
              .epsilon(1e-13));
    CHECK(jump_exp_moment(nj) == doctest::Approx(std::exp(-0.05 + 0.005)).epsilon(1e-14));

    const DoubleExponentialJump de{0.4, 10.0, 8.0};
    CHECK(jump_mean(de) == doctest::Approx(0.4 / 10.0 - 0.6 / 8.0).epsilon(1e-14));
    CHECK(jump_mean_pos(de) == doctest::Approx(0.4 / 10.0).epsilon(1e-14));
    CHECK(jump_mean_abs(de) == doctest::Approx(0.4 / 10.0 + 0.6 / 8.0).epsilon(1e-14));
    // E e^Y = p eta+/(eta+ - 1) + (1-p) eta-/(eta- + 1)
    CHECK(jump_exp_moment(de) ==
          doctest::Approx(0.4 * 10.0 / 9.0 + 0.6 * 8.0 / 9.0).epsilon(1e-14));
    CHECK(jump_exp_moment_finite(de, 9.9));
    CHECK_FALSE(jump_exp_moment_finite(de, 10.1));

    const PointMassJump pm{-0.3};
    CHECK(jump_mean(pm) == -0.3);
    CHECK(jump_mean_pos(pm) == 0.0);
    CHECK(jump_mean_abs(pm) == 0.3);
}

TEST_CASE("jump characteristic functions") {
    const NormalJump nj{0.2, 0.5};
    for (double u : {-2.0, 0.3, 1.7}) {
        const auto want = std::exp(std::complex<double>(-0.5 * 0.25 * u * u, 0.2 * u));
        CHECK(std::abs(jump_cf(nj, u) - want) < 1e-14);
    }
    const PointMassJump pm{0.4};
    CHECK(std::abs(jump_cf(pm, 1.3) -
                   std::exp(std::complex<double>(0.0, 0.4 * 1.3))) < 1e-14);
}

TEST_CASE("characteristic exponent: Brownian and compound Poisson") {
    LevyModel bm;
    bm.gamma = 0.3;
    bm.sigma = 0.5;
    const auto phi = char_exponent(bm, 2.0);
    CHECK(phi.real() == doctest::Approx(-0.5 * 0.25 * 4.0).epsilon(1e-14));
    CHECK(phi.imag() == doctest::Approx(0.3 * 2.0).epsilon(1e-14));

    // |e^{phi}| <= 1 always
    for (const auto& m : {merton(), kou(), vg_model(), stable_model()}) {
        for (double u : {-5.0, -0.7, 0.9, 12.0}) {
            CHECK(char_exponent(m, u).real() <= 1e-12);
        }
    }
}

TEST_CASE("mean rate matches the numeric cf derivative") {
    for (const auto& m : {merton(), kou(), vg_model()}) {
        CHECK(mean_rate(m) ==
              doctest::Approx(mean_rate_numeric(m)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("cumulant1 closed forms") {
    const auto m = merton();
    const double want =
        m.gamma + nu_mean_above_one(m) - /* gamma0 adjustment cancels: */ 0.0;
    (void)want;
    // Merton: log E e^X = gamma0 + sigma^2/2 + lambda (E e^Y - 1)
    const double g0 = drift_gamma0(m);
    CHECK(cumulant1(m) ==
          doctest::Approx(g0 + 0.5 * 0.04 + 3.0 * (std::exp(-0.05 + 0.005) - 1.0))
              .epsilon(1e-12));
    CHECK_THROWS_AS((void)cumulant1(stable_model()), MomentFailure);
}

TEST_CASE("classification") {
    const auto cm = classify(merton());
    CHECK(cm.finite_activity);
    CHECK(cm.has_diffusion);
    CHECK_FALSE(cm.finite_variation);
    CHECK(cm.integrable);
    CHECK(cm.positive_jumps);

    const auto cv = classify(vg_model());
    CHECK_FALSE(cv.finite_activity);
    CHECK(cv.finite_variation);
    CHECK(cv.x_log_x);
    CHECK(cv.integrable);

    const auto cs = classify(stable_model());
    CHECK_FALSE(cs.finite_activity);
    CHECK_FALSE(cs.finite_variation);
    CHECK(cs.integrable); // alpha > 1
}

TEST_CASE("exponential moments") {
    CHECK(check_exp_moment(merton(), 1.0));
    CHECK_FALSE(check_exp_moment(stable_model(), 1.0));
    // VG: E e^{qX} finite iff q < 1/b_pos
    const auto vg = std::get<VarianceGamma>(vg_model().jumps);
    const auto tails = vg_tails(vg);
    CHECK(check_exp_moment(vg_model(), 0.99 / tails.b_pos));
    CHECK_FALSE(check_exp_moment(vg_model(), 1.01 / tails.b_pos));
}

TEST_CASE("vg tails solve the exponent equation") {
    // tails b satisfy 1 - theta nu / b - sigma^2 nu / (2 b^2) = 0 (positive side
    // with b = b_pos, negative side with b = -b_neg)
    const VarianceGamma vg{-0.1, 0.2, 0.3};
    const auto t = vg_tails(vg);
    const auto res = [&](double b) {
        return 1.0 - vg.theta * vg.vg_nu / b -
               0.5 * vg.vg_sigma * vg.vg_sigma * vg.vg_nu / (b * b);
    };
    CHECK(res(t.b_pos) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(res(-t.b_neg) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    CHECK(t.b_pos > 0.0);
    CHECK(t.b_neg > 0.0);
    // negative theta means lighter positive tail
    CHECK(t.b_pos < t.b_neg);
}

TEST_CASE("gamma0 and dual") {
    LevyModel cp;
    cp.gamma = 0.5;
    cp.jumps = CompoundPoisson{2.0, PointMassJump{0.3}};
    // jumps of size 0.3 lie in the unit ball: gamma0 = gamma - lambda*0.3
    CHECK(drift_gamma0(cp) == doctest::Approx(0.5 - 2.0 * 0.3).epsilon(1e-14));
    CHECK_THROWS_AS((void)drift_gamma0(stable_model()), UnsupportedClass);

    const auto d = dual(merton());
    for (double u : {-1.5, 0.25, 3.0}) {
        const auto a = char_exponent(d, u);
        const auto b = char_exponent(merton(), -u);
        CHECK(std::abs(a - b) < 1e-13);
    }
}

TEST_CASE("validation rejects bad parameters") {
    LevyModel m;
    m.sigma = -0.1;
    CHECK_THROWS_AS(m.validate(), DomainError);
    m.sigma = 0.0;
    m.jumps = CompoundPoisson{-1.0, PointMassJump{0.1}};
    CHECK_THROWS_AS(m.validate(), DomainError);
    m.jumps = StableJumps{2.5, 1.0, 0.0};
    CHECK_THROWS_AS(m.validate(), DomainError);
    m.jumps = VarianceGamma{0.0, -0.2, 0.3};
    CHECK_THROWS_AS(m.validate(), DomainError);
    m.jumps = NoJumps{};
    m.sigma = 0.2;
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("model ids are csv-safe and distinct") {
    const auto ids = {model_id(merton()), model_id(kou()), model_id(vg_model()),
                      model_id(stable_model())};
    for (const auto& id : ids) {
        CHECK_FALSE(id.empty());
        CHECK(id.find(',') == std::string::npos);
        CHECK(id.find('\n') == std::string::npos);
    }
    CHECK(model_id(merton()) != model_id(kou()));
}
