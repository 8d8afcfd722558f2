#pragma once

#include "levysup/levy_model.hpp"
#include "levysup/mc.hpp"
#include "levysup/path_sim.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace levysup {

struct MarketSpec {
    double s0 = 100.0;
    double r = 0.0;     // risk-free rate per year
    double delta = 0.0; // dividend rate per year
    double T = 1.0;     // maturity in years
};

enum class OptionKind { lookback_put, lookback_call, hindsight_call, hindsight_put };

// extremum is the predetermined running maximum S+ (lookback_put,
// hindsight_call) or minimum S- (lookback_call, hindsight_put) observed up to
// the valuation date; k_index of n monitoring dates have already passed.
struct OptionSpec {
    OptionKind kind = OptionKind::lookback_put;
    std::optional<double> strike; // hindsight kinds only
    double extremum = 0.0;        // 0 = default to s0 (fresh option)
    long k_index = 0;
    long n = 1;
};

void validate_option(const OptionSpec& spec, const MarketSpec& market);

struct PriceEstimate {
    double mean = 0.0;
    double se = 0.0;
    long paths = 0;
    std::uint64_t seed = 0;
    bool continuous = false; // else discrete with n monitoring dates
    long n = 0;
    double bias_bound = 0.0; // nonzero only for fine-grid continuous estimates
};

// Shifts gamma so that log E e^{X_1} = r - delta; idempotent.
LevyModel risk_neutral_drift(const LevyModel& m, const MarketSpec& market);

// payoff given the terminal price and the (already merged) extremum price
double payoff(const OptionSpec& spec, double terminal_S, double extremum_S);

// Per-path log-extrema over the remaining horizon; the continuous fields are
// bridge-exact for finite-activity models and fine-grid approximations
// (refine_factor times the monitoring grid) otherwise.
struct PathExtrema {
    double terminal;
    double dmax, dmin; // over the n-point monitoring grid
    double cmax, cmin; // continuous extrema
};

std::vector<PathExtrema> sample_extrema(const LevyModel& m, double horizon,
                                        long n, const McParams& mc,
                                        bool exact_bridge,
                                        long refine_factor = 8);

// discounted price from stored samples; continuous = use the cmax/cmin fields
PriceEstimate price_from_samples(const OptionSpec& spec, const MarketSpec& market,
                                 const std::vector<PathExtrema>& samples,
                                 bool continuous, const McParams& mc);

PriceEstimate price_discrete(const OptionSpec& spec, const LevyModel& m,
                             const MarketSpec& market, const McParams& mc);

// exact bridge sampling; UnsupportedClass for infinite-activity models
PriceEstimate price_continuous(const OptionSpec& spec, const LevyModel& m,
                               const MarketSpec& market, const McParams& mc);

// fine-grid fallback for any model; bias_bound filled from the rate class
PriceEstimate price_continuous_fine(const OptionSpec& spec, const LevyModel& m,
                                    const MarketSpec& market, const McParams& mc,
                                    long refine_factor = 8);

struct CorrectedPrice {
    double value = 0.0;
    bool hypotheses_ok = false;
    std::string note;
};

// price function of (extremum, strike); lookback evaluators ignore the strike
using PriceFn = std::function<double(double, double)>;

// Continuity corrections: discrete price from a continuous pricer (and the
// reverse) by shifting the predetermined extremum (and strike, for hindsight
// kinds) by e^{+-beta1*sigma*sqrt(T/n)}. Hypotheses are checked and tagged,
// not enforced.
CorrectedPrice correct_discrete_from_continuous(const OptionSpec& spec,
                                                const PriceFn& v_continuous,
                                                const MarketSpec& market,
                                                const LevyModel& m, long n);

CorrectedPrice correct_continuous_from_discrete(const OptionSpec& spec,
                                                const PriceFn& v_discrete,
                                                const MarketSpec& market,
                                                const LevyModel& m, long n);

enum class BoundShape { inv_n, log_n_over_n, log_n_over_sqrt_n };

struct RateBoundReport {
    BoundShape shape;
    std::vector<long> ns;
    std::vector<double> err;    // |V_n - V|
    std::vector<double> err_se;
    double fitted_c = 0.0;      // max of err / shape(n)
    double bias_budget = 0.0;   // fine-grid bias allowance on V
    bool pass = false;          // ratios bounded (not growing) along n
};

// |V_n - V| along n_list against C * shape(n); V from the fine-grid
// estimator at max(n_list) * refine_factor steps
RateBoundReport rate_bound_check(const OptionSpec& spec, const LevyModel& m,
                                 const MarketSpec& market,
                                 const std::vector<long>& n_list,
                                 const McParams& mc, BoundShape shape,
                                 long refine_factor = 8);

} // namespace levysup
