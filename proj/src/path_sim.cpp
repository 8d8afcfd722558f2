#include "levysup/path_sim.hpp"
#include "levysup/asymptotics.hpp"
#include "levysup/errors.hpp"
#include "levysup/math.hpp"
#include "levysup/spitzer.hpp"

#include <algorithm>
#include <cmath>

namespace levysup {

namespace {

// Chambers-Mallows-Stuck draw from the standard (scale 1) stable law in the
// same parameterization as the characteristic exponent
double sample_stable_std(double alpha, double skew, PathStream& stream) {
    const double v = kPi * (stream.uniform() - 0.5);
    const double w = stream.exponential();
    const double ta = std::tan(0.5 * kPi * alpha);
    const double b = std::atan(skew * ta) / alpha;
    const double s = std::pow(1.0 + skew * skew * ta * ta, 0.5 / alpha);
    return s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
}

} // namespace

double sample_jump(const JumpLaw& law, PathStream& stream) {
    if (const auto* nj = std::get_if<NormalJump>(&law))
        return nj->mu + nj->sd * stream.normal();
    if (const auto* pm = std::get_if<PointMassJump>(&law)) {
        return pm->value;
    }
    const auto& de = std::get<DoubleExponentialJump>(law);
    const double u = stream.uniform();
    const double e = stream.exponential();
    return u < de.p ? e / de.eta_plus : -e / de.eta_minus;
}

double sample_increment(const LevyModel& m, double dt, PathStream& stream) {
    if (!(dt > 0.0)) throw DomainError("sample_increment: dt must be > 0");
    if (const auto* st = std::get_if<StableJumps>(&m.jumps)) {
        double x = m.gamma * dt;
        if (m.sigma > 0.0) x += m.sigma * std::sqrt(dt) * stream.normal();
        return x + st->scale * std::pow(dt, 1.0 / st->alpha) *
                       sample_stable_std(st->alpha, st->skew, stream);
    }
    double x = drift_gamma0(m) * dt;
    if (m.sigma > 0.0) x += m.sigma * std::sqrt(dt) * stream.normal();
    if (const auto* cp = std::get_if<CompoundPoisson>(&m.jumps)) {
        const long k = stream.poisson(cp->rate * dt);
        for (long j = 0; j < k; ++j) x += sample_jump(cp->law, stream);
    } else if (const auto* vg = std::get_if<VarianceGamma>(&m.jumps)) {
        const double g = stream.gamma(dt / vg->vg_nu, vg->vg_nu);
        x += vg->theta * g + vg->vg_sigma * std::sqrt(g) * stream.normal();
    }
    return x;
}

PathGrid simulate_grid(const LevyModel& m, double t, long n, PathStream& stream) {
    if (n < 1) throw DomainError("simulate_grid: n must be >= 1");
    if (!(t > 0.0)) throw DomainError("simulate_grid: t must be > 0");
    PathGrid g;
    g.times.resize(static_cast<std::size_t>(n) + 1);
    g.values.resize(static_cast<std::size_t>(n) + 1);
    g.times[0] = 0.0;
    g.values[0] = 0.0;
    const double dt = t / n;
    for (long k = 1; k <= n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        g.times[i] = k * t / n;
        g.values[i] = g.values[i - 1] + sample_increment(m, dt, stream);
    }
    return g;
}

double bridge_max(double x, double y, double var, double u) {
    if (!(var > 0.0)) throw DomainError("bridge_max: var must be > 0");
    if (!(u > 0.0 && u < 1.0)) throw DomainError("bridge_max: u must be in (0,1)");
    const double d = x - y;
    return 0.5 * ((x + y) + std::sqrt(d * d - 2.0 * var * std::log(u)));
}

SupremumSample simulate_jd_supremum(const LevyModel& m, double t, long n,
                                    PathStream& stream,
                                    std::vector<double>* grid_values) {
    if (n < 1) throw DomainError("simulate_jd_supremum: n must be >= 1");
    if (!(t > 0.0)) throw DomainError("simulate_jd_supremum: t must be > 0");
    const auto* cp = std::get_if<CompoundPoisson>(&m.jumps);
    if (!cp && !std::holds_alternative<NoJumps>(m.jumps))
        throw UnsupportedClass(
            "simulate_jd_supremum: exact suprema need finite activity");

    const double g0 = drift_gamma0(m);
    const double sig = m.sigma;

    long nj = 0;
    std::vector<double> jt, js;
    if (cp) {
        nj = stream.poisson(cp->rate * t);
        jt.resize(static_cast<std::size_t>(nj));
        js.resize(static_cast<std::size_t>(nj));
        for (long j = 0; j < nj; ++j) jt[static_cast<std::size_t>(j)] = t * stream.uniform();
        std::sort(jt.begin(), jt.end());
        for (long j = 0; j < nj; ++j) js[static_cast<std::size_t>(j)] = sample_jump(cp->law, stream);
    }

    double tau = 0.0, v = 0.0, cmax = 0.0, cmin = 0.0, dmax = 0.0, dmin = 0.0;
    const auto advance = [&](double tnext) {
        const double dt = tnext - tau;
        if (dt > 0.0) {
            double vpre;
            if (sig > 0.0) {
                vpre = v + g0 * dt + sig * std::sqrt(dt) * stream.normal();
                const double var = sig * sig * dt;
                cmax = std::max(cmax, bridge_max(v, vpre, var, stream.uniform()));
                cmin = std::min(cmin, -bridge_max(-v, -vpre, var, stream.uniform()));
            } else {
                // piecewise linear: extrema at segment endpoints
                vpre = v + g0 * dt;
                cmax = std::max(cmax, std::max(v, vpre));
                cmin = std::min(cmin, std::min(v, vpre));
            }
            v = vpre;
        }
        tau = tnext;
    };

    if (grid_values) grid_values->resize(static_cast<std::size_t>(n));
    std::size_t j = 0;
    for (long k = 1; k <= n; ++k) {
        const double tg = k * t / n;
        while (j < jt.size() && jt[j] < tg) {
            advance(jt[j]);
            v += js[j];
            cmax = std::max(cmax, v);
            cmin = std::min(cmin, v);
            ++j;
        }
        advance(tg);
        dmax = std::max(dmax, v);
        dmin = std::min(dmin, v);
        if (grid_values) (*grid_values)[static_cast<std::size_t>(k - 1)] = v;
    }

    SupremumSample s;
    s.terminal = v;
    s.discrete_max = dmax;
    s.discrete_min = dmin;
    s.continuous_max = cmax;
    s.continuous_min = cmin;
    s.exactness = Exactness::exact;
    return s;
}

SupremumSample fine_grid_supremum(const LevyModel& m, double t, long n_coarse,
                                  long refine_factor, PathStream& stream) {
    if (refine_factor < 2)
        throw DomainError("fine_grid_supremum: refine_factor must be >= 2");
    if (n_coarse < 1) throw DomainError("fine_grid_supremum: n_coarse must be >= 1");
    if (!(t > 0.0)) throw DomainError("fine_grid_supremum: t must be > 0");

    const long nfine = n_coarse * refine_factor;
    const double dt = t / nfine;
    double v = 0.0, fmax = 0.0, fmin = 0.0, dmax = 0.0, dmin = 0.0;
    for (long i = 1; i <= nfine; ++i) {
        v += sample_increment(m, dt, stream);
        fmax = std::max(fmax, v);
        fmin = std::min(fmin, v);
        if (i % refine_factor == 0) {
            dmax = std::max(dmax, v);
            dmin = std::min(dmin, v);
        }
    }

    SupremumSample s;
    s.terminal = v;
    s.discrete_max = dmax;
    s.discrete_min = dmin;
    s.continuous_max = fmax;
    s.continuous_min = fmin;
    s.exactness = Exactness::fine_grid_biased;
    return s;
}

double discretization_bias_bound(const LevyModel& m, double t, long n_fine,
                                 const QuadSpec& q) {
    if (n_fine < 1) throw DomainError("discretization_bias_bound: n_fine >= 1");
    const RatePrediction p = classify_rate(m, t, q);
    const double nf = static_cast<double>(n_fine);
    // factor 2 margin on the leading-order estimate
    switch (p.order) {
        case RateOrder::inv_sqrt_n:
            return 2.0 * std::fabs(*p.leading_coefficient) / std::sqrt(nf);
        case RateOrder::inv_n:
            return 2.0 * std::fabs(*p.leading_coefficient) / (2.0 * nf);
        case RateOrder::small_o_inv_sqrt_n:
            if (p.exact_power && p.leading_coefficient)
                return 2.0 * std::fabs(*p.leading_coefficient) *
                       std::pow(nf, -*p.exact_power);
            return 2.0 * sup_mean_bound(m, t) / std::sqrt(nf);
        case RateOrder::log_n_over_n:
            return 2.0 * sup_mean_bound(m, t) * std::log(nf) / nf;
    }
    return 0.0;
}

} // namespace levysup
