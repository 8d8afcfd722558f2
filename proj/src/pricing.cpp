#include "levysup/pricing.hpp"
#include "levysup/asymptotics.hpp"
#include "levysup/errors.hpp"
#include "levysup/math.hpp"
#include "levysup/spitzer.hpp"

#include <algorithm>
#include <cmath>

namespace levysup {

namespace {

bool is_max_type(OptionKind k) {
    return k == OptionKind::lookback_put || k == OptionKind::hindsight_call;
}

bool is_put(OptionKind k) {
    return k == OptionKind::lookback_put || k == OptionKind::hindsight_put;
}

bool is_hindsight(OptionKind k) {
    return k == OptionKind::hindsight_call || k == OptionKind::hindsight_put;
}

double resolved_extremum(const OptionSpec& spec, const MarketSpec& market) {
    return spec.extremum > 0.0 ? spec.extremum : market.s0;
}

double remaining_horizon(const OptionSpec& spec, const MarketSpec& market) {
    return market.T * static_cast<double>(spec.n - spec.k_index) / spec.n;
}

// discounted per-path value given the log of the relevant running extremum
double path_value(OptionKind kind, double e0, double strike, double s0,
                  double disc_r, double disc_d, double x) {
    const double ext_S = is_max_type(kind) ? std::max(e0, s0 * std::exp(x))
                                           : std::min(e0, s0 * std::exp(x));
    switch (kind) {
        case OptionKind::lookback_put: return disc_r * ext_S - disc_d * s0;
        case OptionKind::lookback_call: return disc_d * s0 - disc_r * ext_S;
        case OptionKind::hindsight_call:
            return disc_r * std::max(ext_S - strike, 0.0);
        case OptionKind::hindsight_put:
            return disc_r * std::max(strike - ext_S, 0.0);
    }
    return 0.0;
}

struct Discounts {
    double r, d;
};

Discounts discounts(const OptionSpec& spec, const MarketSpec& market) {
    const double trem = remaining_horizon(spec, market);
    return {std::exp(-market.r * trem), std::exp(-market.delta * trem)};
}

McStats stats_of(const std::vector<double>& v) {
    double sum = 0.0, sq = 0.0;
    for (const double x : v) {
        sum += x;
        sq += x * x;
    }
    McStats s;
    s.paths = static_cast<long>(v.size());
    s.mean = sum / s.paths;
    const double var = (sq - sum * sum / s.paths) / (s.paths - 1);
    s.se = std::sqrt(var > 0.0 ? var / s.paths : 0.0);
    return s;
}

} // namespace

void validate_option(const OptionSpec& spec, const MarketSpec& market) {
    if (!(market.s0 > 0.0) || !(market.T > 0.0))
        throw DomainError("market: s0 and T must be > 0");
    if (spec.n < 1) throw DomainError("option: n must be >= 1");
    if (spec.k_index < 0 || spec.k_index > spec.n)
        throw DomainError("option: k_index must be in [0, n]");
    if (is_hindsight(spec.kind)) {
        if (!spec.strike || !(*spec.strike > 0.0))
            throw DomainError("option: hindsight kinds require a positive strike");
    } else if (spec.strike) {
        throw DomainError("option: lookback kinds carry no strike");
    }
    // The predetermined extremum may sit on either side of s0: correction
    // formulas evaluate prices at extrema shifted across the spot. The payoff
    // merge with the running extremum makes such inputs well defined.
    if (spec.extremum < 0.0)
        throw DomainError("option: extremum must be positive (0 = use s0)");
}

LevyModel risk_neutral_drift(const LevyModel& m, const MarketSpec& market) {
    if (!check_exp_moment(m, 1.0))
        throw MomentFailure("risk_neutral_drift: E e^X is infinite");
    LevyModel out = m;
    out.gamma += (market.r - market.delta) - cumulant1(m);
    return out;
}

double payoff(const OptionSpec& spec, double terminal_S, double extremum_S) {
    switch (spec.kind) {
        case OptionKind::lookback_put: return extremum_S - terminal_S;
        case OptionKind::lookback_call: return terminal_S - extremum_S;
        case OptionKind::hindsight_call:
            return std::max(extremum_S - *spec.strike, 0.0);
        case OptionKind::hindsight_put:
            return std::max(*spec.strike - extremum_S, 0.0);
    }
    return 0.0;
}

std::vector<PathExtrema> sample_extrema(const LevyModel& m, double horizon,
                                        long n, const McParams& mc,
                                        bool exact_bridge, long refine_factor) {
    static_assert(sizeof(PathExtrema) == 5 * sizeof(double));
    if (exact_bridge && !classify(m).finite_activity)
        throw UnsupportedClass(
            "sample_extrema: exact bridge sampling needs finite activity");
    std::vector<PathExtrema> out(static_cast<std::size_t>(mc.paths));
    for_each_path(mc.paths, mc.seed, 5, reinterpret_cast<double*>(out.data()),
                  [&](long, PathStream& stream, double* slot) {
                      const SupremumSample s =
                          exact_bridge
                              ? simulate_jd_supremum(m, horizon, n, stream)
                              : fine_grid_supremum(m, horizon, n, refine_factor,
                                                   stream);
                      slot[0] = s.terminal;
                      slot[1] = s.discrete_max;
                      slot[2] = s.discrete_min;
                      slot[3] = *s.continuous_max;
                      slot[4] = *s.continuous_min;
                  });
    return out;
}

PriceEstimate price_from_samples(const OptionSpec& spec, const MarketSpec& market,
                                 const std::vector<PathExtrema>& samples,
                                 bool continuous, const McParams& mc) {
    validate_option(spec, market);
    const Discounts d = discounts(spec, market);
    const double e0 = resolved_extremum(spec, market);
    const double strike = spec.strike.value_or(0.0);

    std::vector<double> vals(samples.size());
    const bool mx = is_max_type(spec.kind);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const PathExtrema& p = samples[i];
        const double x = continuous ? (mx ? p.cmax : p.cmin)
                                    : (mx ? p.dmax : p.dmin);
        vals[i] = path_value(spec.kind, e0, strike, market.s0, d.r, d.d, x);
    }
    const McStats st = stats_of(vals);
    PriceEstimate est;
    est.mean = st.mean;
    est.se = st.se;
    est.paths = st.paths;
    est.seed = mc.seed;
    est.continuous = continuous;
    est.n = spec.n;
    return est;
}

PriceEstimate price_discrete(const OptionSpec& spec, const LevyModel& m,
                             const MarketSpec& market, const McParams& mc) {
    validate_option(spec, market);
    const long n_rem = spec.n - spec.k_index;
    const Discounts d = discounts(spec, market);
    const double e0 = resolved_extremum(spec, market);
    const double strike = spec.strike.value_or(0.0);

    PriceEstimate est;
    est.seed = mc.seed;
    est.continuous = false;
    est.n = spec.n;
    if (n_rem == 0) { // no fixing dates left: deterministic
        est.mean = path_value(spec.kind, e0, strike, market.s0, 1.0, 1.0, 0.0);
        est.paths = 0;
        return est;
    }

    const double dt = market.T / spec.n;
    const bool mx = is_max_type(spec.kind);
    const McStats st = mc_mean(mc.paths, mc.seed, [&](long, PathStream& stream) {
        double v = 0.0, xext = 0.0;
        for (long j = 0; j < n_rem; ++j) {
            v += sample_increment(m, dt, stream);
            xext = mx ? std::max(xext, v) : std::min(xext, v);
        }
        return path_value(spec.kind, e0, strike, market.s0, d.r, d.d, xext);
    });
    est.mean = st.mean;
    est.se = st.se;
    est.paths = st.paths;
    return est;
}

PriceEstimate price_continuous(const OptionSpec& spec, const LevyModel& m,
                               const MarketSpec& market, const McParams& mc) {
    validate_option(spec, market);
    if (!classify(m).finite_activity)
        throw UnsupportedClass(
            "price_continuous: exact bridge sampling needs finite activity; "
            "use the fine-grid estimator");
    const double trem = remaining_horizon(spec, market);
    const Discounts d = discounts(spec, market);
    const double e0 = resolved_extremum(spec, market);
    const double strike = spec.strike.value_or(0.0);
    const bool mx = is_max_type(spec.kind);

    const McStats st = mc_mean(mc.paths, mc.seed, [&](long, PathStream& stream) {
        const SupremumSample s = simulate_jd_supremum(m, trem, 1, stream);
        const double x = mx ? *s.continuous_max : *s.continuous_min;
        return path_value(spec.kind, e0, strike, market.s0, d.r, d.d, x);
    });
    PriceEstimate est;
    est.mean = st.mean;
    est.se = st.se;
    est.paths = st.paths;
    est.seed = mc.seed;
    est.continuous = true;
    est.n = spec.n;
    return est;
}

PriceEstimate price_continuous_fine(const OptionSpec& spec, const LevyModel& m,
                                    const MarketSpec& market, const McParams& mc,
                                    long refine_factor) {
    validate_option(spec, market);
    const double trem = remaining_horizon(spec, market);
    const long n_rem = spec.n - spec.k_index;
    const Discounts d = discounts(spec, market);
    const double e0 = resolved_extremum(spec, market);
    const double strike = spec.strike.value_or(0.0);
    const bool mx = is_max_type(spec.kind);

    const McStats st = mc_mean(mc.paths, mc.seed, [&](long, PathStream& stream) {
        const SupremumSample s =
            fine_grid_supremum(m, trem, n_rem, refine_factor, stream);
        const double x = mx ? *s.continuous_max : *s.continuous_min;
        return path_value(spec.kind, e0, strike, market.s0, d.r, d.d, x);
    });
    PriceEstimate est;
    est.mean = st.mean;
    est.se = st.se;
    est.paths = st.paths;
    est.seed = mc.seed;
    est.continuous = true;
    est.n = spec.n;
    est.bias_bound = market.s0 * std::exp(sup_mean_bound(m, trem)) *
                     discretization_bias_bound(m, trem, n_rem * refine_factor);
    return est;
}

namespace {

CorrectedPrice correct_impl(const OptionSpec& spec, const PriceFn& fn,
                            const MarketSpec& market, const LevyModel& m,
                            long n, bool to_discrete) {
    validate_option(spec, market);
    if (n < 1) throw DomainError("correction: n must be >= 1");
    const double b = beta1() * m.sigma * std::sqrt(market.T / n);
    const bool mx = is_max_type(spec.kind);
    // the extremum shift moves toward the discrete side for the discrete
    // target and away from it for the continuous target
    const double shift = (mx == to_discrete) ? b : -b;
    const double pre = std::exp(-shift);
    const double e0 = resolved_extremum(spec, market);
    const double strike = spec.strike.value_or(0.0);
    const double disc_d = std::exp(-market.delta * remaining_horizon(spec, market));

    CorrectedPrice out;
    if (is_hindsight(spec.kind)) {
        out.value = pre * fn(e0 * std::exp(shift), strike * std::exp(shift));
    } else {
        const double sign = mx ? 1.0 : -1.0;
        out.value = pre * fn(e0 * std::exp(shift), 0.0) +
                    sign * (pre - 1.0) * disc_d * market.s0;
    }

    const ModelClass cls = classify(m);
    const bool h2 = m.sigma > 0.0 && cls.finite_activity && cls.integrable;
    const bool h1 = h2 && check_exp_moment(m, 2.0 + 1e-9);
    out.hypotheses_ok = is_put(spec.kind) ? h1 : h2;
    if (!h2)
        out.note = "requires sigma > 0, finite activity, integrability";
    else if (!out.hypotheses_ok)
        out.note = "put correction needs E e^{q M_T} < infinity for some q > 2";
    return out;
}

} // namespace

CorrectedPrice correct_discrete_from_continuous(const OptionSpec& spec,
                                                const PriceFn& v_continuous,
                                                const MarketSpec& market,
                                                const LevyModel& m, long n) {
    return correct_impl(spec, v_continuous, market, m, n, true);
}

CorrectedPrice correct_continuous_from_discrete(const OptionSpec& spec,
                                                const PriceFn& v_discrete,
                                                const MarketSpec& market,
                                                const LevyModel& m, long n) {
    return correct_impl(spec, v_discrete, market, m, n, false);
}

RateBoundReport rate_bound_check(const OptionSpec& spec, const LevyModel& m,
                                 const MarketSpec& market,
                                 const std::vector<long>& n_list,
                                 const McParams& mc, BoundShape shape,
                                 long refine_factor) {
    validate_option(spec, market);
    if (n_list.size() < 2)
        throw DomainError("rate_bound_check: need at least two n values");
    const long n_max = n_list.back();
    const long n_fine = n_max * refine_factor;
    for (const long n : n_list)
        if (n < 2 || n_fine % n != 0)
            throw DomainError("rate_bound_check: every n must divide n_fine");

    const double trem = market.T; // fresh option (k_index = 0 studies)
    const Discounts d{std::exp(-market.r * trem), std::exp(-market.delta * trem)};
    const double e0 = resolved_extremum(spec, market);
    const double strike = spec.strike.value_or(0.0);
    const bool mx = is_max_type(spec.kind);
    const double dt = trem / n_fine;
    const std::size_t cols = n_list.size() + 1; // payoffs per n, then fine

    // common random numbers: one fine path per draw, every coarse grid read
    // off the same path
    std::vector<double> payoffs(static_cast<std::size_t>(mc.paths) * cols);
    for_each_path(mc.paths, mc.seed, static_cast<int>(cols), payoffs.data(),
                  [&](long, PathStream& stream, double* slot) {
                      std::vector<double> xs(static_cast<std::size_t>(n_fine));
                      double v = 0.0;
                      for (long i = 0; i < n_fine; ++i) {
                          v += sample_increment(m, dt, stream);
                          xs[static_cast<std::size_t>(i)] = v;
                      }
                      for (std::size_t c = 0; c < cols; ++c) {
                          const long n = c + 1 < cols ? n_list[c] : n_fine;
                          const long step = n_fine / n;
                          double xext = 0.0;
                          for (long j = step - 1; j < n_fine; j += step)
                              xext = mx ? std::max(xext, xs[static_cast<std::size_t>(j)])
                                        : std::min(xext, xs[static_cast<std::size_t>(j)]);
                          slot[c] = path_value(spec.kind, e0, strike, market.s0,
                                               d.r, d.d, xext);
                      }
                  });

    RateBoundReport rep;
    rep.shape = shape;
    rep.ns = n_list;
    rep.bias_budget = market.s0 * std::exp(sup_mean_bound(m, trem)) *
                      discretization_bias_bound(m, trem, n_fine);

    const auto shape_fn = [&](long n) {
        const double nn = static_cast<double>(n);
        switch (shape) {
            case BoundShape::inv_n: return 1.0 / nn;
            case BoundShape::log_n_over_n: return std::log(nn) / nn;
            case BoundShape::log_n_over_sqrt_n: return std::log(nn) / std::sqrt(nn);
        }
        return 1.0 / nn;
    };

    std::vector<double> ratios;
    for (std::size_t c = 0; c + 1 < cols; ++c) {
        // statistics of the pathwise difference against the fine estimate
        double sum = 0.0, sq = 0.0;
        for (long i = 0; i < mc.paths; ++i) {
            const double diff = payoffs[static_cast<std::size_t>(i) * cols + c] -
                                payoffs[static_cast<std::size_t>(i) * cols + cols - 1];
            sum += diff;
            sq += diff * diff;
        }
        const double mean = sum / mc.paths;
        const double var = (sq - sum * sum / mc.paths) / (mc.paths - 1);
        const double se = std::sqrt(var > 0.0 ? var / mc.paths : 0.0);
        rep.err.push_back(std::fabs(mean));
        rep.err_se.push_back(se);
        ratios.push_back(std::fabs(mean) / shape_fn(n_list[c]));
        rep.fitted_c = std::max(rep.fitted_c, ratios.back());
    }

    // pass when the scaled errors do not grow along n: the worst late ratio
    // (less its noise allowance) stays within 25% of the worst early ratio
    const std::size_t half = ratios.size() / 2;
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double allow =
            (3.0 * rep.err_se[i] + rep.bias_budget) / shape_fn(n_list[i]);
        if (i < half)
            head = std::max(head, ratios[i] + allow);
        else
            tail = std::max(tail, ratios[i] - allow);
    }
    rep.pass = tail <= 1.25 * head;
    return rep;
}

} // namespace levysup
