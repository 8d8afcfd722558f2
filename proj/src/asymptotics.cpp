#include "levysup/asymptotics.hpp"
#include "levysup/errors.hpp"
#include "levysup/math.hpp"
#include "levysup/mc.hpp"
#include "levysup/path_sim.hpp"
#include "levysup/spitzer.hpp"

#include <cmath>

namespace levysup {

namespace {

// E phi(N(a,v)) and E Phi(N(a,v)) for a Gaussian argument
inline double mean_pdf_of_gaussian(double a, double v) {
    const double s = std::sqrt(1.0 + v);
    return norm_pdf(a / s) / s;
}

// E[S * Phi(alpha*S + beta)] for S ~ N(m, s2)
inline double mean_s_cdf(double m, double s2, double alpha, double beta) {
    const double den = std::sqrt(1.0 + alpha * alpha * s2);
    const double d = (alpha * m + beta) / den;
    return m * norm_cdf(d) + alpha * s2 * norm_pdf(d) / den;
}

struct JumpExpectations {
    double mean_pdf;  // E phi(A),            A = g0 sqrt(t)/sigma + S / (sigma sqrt(t))
    double mean_wcdf; // E (g0 t + S) Phi(A), S the jump sum over [0, t]
    double err;
};

// closed-form Poisson series for normal and point-mass jump laws
JumpExpectations jump_expectations_series(double g0, double sigma, double t,
                                          const CompoundPoisson& cp) {
    const double alpha = 1.0 / (sigma * std::sqrt(t));
    const double beta = g0 * std::sqrt(t) / sigma;
    const double lam_t = cp.rate * t;
    const double mean_abs = jump_mean_abs(cp.law);

    const auto term = [&](long k, double* f1, double* f2) {
        if (const auto* nj = std::get_if<NormalJump>(&cp.law)) {
            const double m = k * nj->mu;
            const double s2 = k * nj->sd * nj->sd;
            *f1 = mean_pdf_of_gaussian(beta + alpha * m, alpha * alpha * s2);
            const double den = std::sqrt(1.0 + alpha * alpha * s2);
            *f2 = g0 * t * norm_cdf((alpha * m + beta) / den) +
                  mean_s_cdf(m, s2, alpha, beta);
            return;
        }
        const double c = std::get<PointMassJump>(cp.law).value;
        const double a = beta + alpha * k * c;
        *f1 = norm_pdf(a);
        *f2 = (g0 * t + k * c) * norm_cdf(a);
    };

    JumpExpectations out{0.0, 0.0, 0.0};
    double pk = std::exp(-lam_t);
    long k = 0;
    for (;;) {
        double f1, f2;
        term(k, &f1, &f2);
        out.mean_pdf += pk * f1;
        out.mean_wcdf += pk * f2;
        const double pk1 = pk * lam_t / (k + 1);
        if (k + 2 > lam_t) {
            const double r = lam_t / (k + 2);
            const double c1 = 1.0 + std::fabs(g0) * t;
            const double resid =
                pk1 * ((c1 + (k + 1) * mean_abs) / (1.0 - r) +
                       mean_abs * r / ((1.0 - r) * (1.0 - r)));
            if (resid < 1e-12 || pk1 == 0.0) {
                out.err = resid;
                break;
            }
        }
        pk = pk1;
        ++k;
    }
    return out;
}

JumpExpectations jump_expectations_mc(double g0, double sigma, double t,
                                      const CompoundPoisson& cp, long budget,
                                      std::uint64_t seed) {
    const double alpha = 1.0 / (sigma * std::sqrt(t));
    const double beta = g0 * std::sqrt(t) / sigma;
    std::vector<double> samples(static_cast<std::size_t>(budget) * 2);
    for_each_path(
        budget, seed, 2, samples.data(),
        [&](long, PathStream& stream, double* out) {
            const long k = stream.poisson(cp.rate * t);
            double sum = 0.0;
            for (long j = 0; j < k; ++j) sum += sample_jump(cp.law, stream);
            const double a = beta + alpha * sum;
            out[0] = norm_pdf(a);
            out[1] = (g0 * t + sum) * norm_cdf(a);
        },
        true, StreamKind::term);
    const McStats s1 = column_stats(samples.data(), budget, 2, 0);
    const McStats s2 = column_stats(samples.data(), budget, 2, 1);
    return {s1.mean, s2.mean, s1.se + s2.se};
}

} // namespace

CorrectionConstants correction_constants() {
    const double zh = riemann_zeta_unit_interval(0.5);
    return {-zh / kSqrt2Pi, zh};
}

double beta1() {
    return correction_constants().beta1;
}

RatePrediction classify_rate(const LevyModel& m, double t, const QuadSpec& q) {
    if (!(t > 0.0)) throw DomainError("classify_rate: t must be > 0");
    const ModelClass cls = classify(m);
    if (!cls.integrable) throw NotIntegrable("classify_rate: model not integrable");

    RatePrediction p;
    if (m.sigma > 0.0) {
        p.order = RateOrder::inv_sqrt_n;
        p.leading_coefficient = beta1() * m.sigma * std::sqrt(t);
        p.source = "diffusive half-order term";
        return p;
    }
    if (cls.finite_activity) {
        const ExpansionResult e = expansion_fa_sigma_zero(m, t, 1, q);
        p.order = RateOrder::inv_n;
        p.leading_coefficient = 2.0 * e.predicted_gap; // the 1/(2n) numerator
        p.source = "finite-activity drift-jump term";
        return p;
    }
    if (const auto* st = std::get_if<StableJumps>(&m.jumps)) {
        p.order = RateOrder::small_o_inv_sqrt_n;
        p.exact_power = 1.0 / st->alpha;
        p.leading_coefficient =
            stable_limit(st->alpha, t, expected_positive_part(m, 1.0, q));
        p.source = "stable exact order";
        return p;
    }
    if (cls.x_log_x) {
        const ExpansionResult e = expansion_fv(m, t, 1, q);
        p.order = RateOrder::inv_n;
        p.leading_coefficient = 2.0 * e.predicted_gap;
        p.source = "finite-variation infinite-activity term";
        return p;
    }
    p.order = RateOrder::log_n_over_n;
    p.source = "finite-variation log bound";
    return p;
}

ExpansionResult expansion_fa_sigma_pos(const LevyModel& m, double t, long n,
                                       long mc_budget, std::uint64_t seed,
                                       const QuadSpec&) {
    const ModelClass cls = classify(m);
    if (!cls.finite_activity || !(m.sigma > 0.0))
        throw UnsupportedClass(
            "expansion_fa_sigma_pos: needs finite activity and sigma > 0");
    if (n < 1) throw DomainError("expansion_fa_sigma_pos: n must be >= 1");

    const double g0 = drift_gamma0(m);
    const double sig_rt = m.sigma * std::sqrt(t);

    double lam_ey_pos = 0.0;
    JumpExpectations je{norm_pdf(g0 * std::sqrt(t) / m.sigma),
                        g0 * t * norm_cdf(g0 * std::sqrt(t) / m.sigma), 0.0};
    if (const auto* cp = std::get_if<CompoundPoisson>(&m.jumps)) {
        lam_ey_pos = cp->rate * jump_mean_pos(cp->law);
        if (std::holds_alternative<DoubleExponentialJump>(cp->law))
            je = jump_expectations_mc(g0, m.sigma, t, *cp, mc_budget, seed);
        else
            je = jump_expectations_series(g0, m.sigma, t, *cp);
    }

    ExpansionResult res;
    res.n = n;
    const double half = beta1() * sig_rt / std::sqrt(static_cast<double>(n));
    const double numer =
        0.5 * g0 * t + lam_ey_pos * t - sig_rt * je.mean_pdf - je.mean_wcdf;
    const double second = numer / (2.0 * n);
    res.terms.push_back({"half_order", half, 1e-12});
    res.terms.push_back({"one_over_2n", second, je.err * (1.0 + sig_rt) / (2.0 * n)});
    res.predicted_gap = half + second;
    return res;
}

ExpansionResult expansion_fa_sigma_zero(const LevyModel& m, double t, long n,
                                        const QuadSpec& q) {
    const ModelClass cls = classify(m);
    if (!cls.finite_activity || m.sigma != 0.0)
        throw UnsupportedClass(
            "expansion_fa_sigma_zero: needs finite activity and sigma = 0");
    if (n < 1) throw DomainError("expansion_fa_sigma_zero: n must be >= 1");

    const double g0 = drift_gamma0(m);
    double lam_ey_pos = 0.0;
    if (const auto* cp = std::get_if<CompoundPoisson>(&m.jumps))
        lam_ey_pos = cp->rate * jump_mean_pos(cp->law);

    const ValErr ex = expected_positive_part_ex(m, t, q);
    const double numer = std::max(g0, 0.0) * t + lam_ey_pos * t - ex.value;
    ExpansionResult res;
    res.n = n;
    res.terms.push_back({"one_over_2n", numer / (2.0 * n), ex.error / (2.0 * n)});
    res.predicted_gap = res.terms[0].value;
    return res;
}

ExpansionResult expansion_fv(const LevyModel& m, double t, long n,
                             const QuadSpec& q) {
    const ModelClass cls = classify(m);
    if (m.sigma != 0.0 || cls.finite_activity || !cls.finite_variation ||
        !cls.x_log_x)
        throw UnsupportedClass(
            "expansion_fv: needs sigma = 0, infinite activity, finite "
            "variation, x log x integrable");
    if (n < 1) throw DomainError("expansion_fv: n must be >= 1");

    const double g0 = drift_gamma0(m);
    const ValErr ex = expected_positive_part_ex(m, t, q);
    const double numer = (std::max(g0, 0.0) + nu_pos_mean(m)) * t - ex.value;
    ExpansionResult res;
    res.n = n;
    res.terms.push_back({"one_over_2n", numer / (2.0 * n), ex.error / (2.0 * n)});
    res.predicted_gap = res.terms[0].value;
    return res;
}

double stable_limit(double alpha, double t, double ex1_plus) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw DomainError("stable_limit: alpha must be in (1,2)");
    if (!(t > 0.0)) throw DomainError("stable_limit: t must be > 0");
    if (ex1_plus < 0.0) throw DomainError("stable_limit: ex1_plus must be >= 0");
    return -std::pow(t, 1.0 / alpha) *
           riemann_zeta_unit_interval(1.0 - 1.0 / alpha) * ex1_plus;
}

} // namespace levysup
