#pragma once

#include "levysup/levy_model.hpp"
#include "levysup/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace levysup {

struct CorrectionConstants {
    double beta1;     // -zeta(1/2)/sqrt(2*pi)
    double zeta_half; // zeta(1/2)
};

CorrectionConstants correction_constants();
double beta1();

// Convergence order of the monitoring gap E(M_t - M_t^n) in n.
enum class RateOrder { inv_sqrt_n, small_o_inv_sqrt_n, log_n_over_n, inv_n };

// leading_coefficient is the limit of the scaled gap under the convention
//   inv_sqrt_n : sqrt(n) * gap -> c
//   inv_n      : 2n * gap      -> c
//   exact_power p (stable case): n^p * gap -> c
struct RatePrediction {
    RateOrder order;
    std::optional<double> leading_coefficient;
    std::optional<double> exact_power; // known sharp power when the order
                                       // label alone is not exact (stable: 1/alpha)
    std::string source;
};

RatePrediction classify_rate(const LevyModel& m, double t, const QuadSpec& q = {});

struct ExpansionTerm {
    std::string label;
    double value;
    double error;
};

struct ExpansionResult {
    long n = 0;
    double predicted_gap = 0.0;
    std::vector<ExpansionTerm> terms;
};

// Finite activity, sigma > 0: half-order term beta1*sigma*sqrt(t/n) plus the
// 1/(2n) term. The two jump-part expectations are closed-form Gaussian
// algebra for normal and point-mass jumps; double-exponential jumps fall
// back to Monte Carlo over (jump count, jump sizes) with mc_budget samples.
ExpansionResult expansion_fa_sigma_pos(const LevyModel& m, double t, long n,
                                       long mc_budget, std::uint64_t seed = 1,
                                       const QuadSpec& q = {});

// Finite activity, sigma = 0: gap = (g0^+ t + lambda t E Y^+ - E X_t^+)/(2n)
ExpansionResult expansion_fa_sigma_zero(const LevyModel& m, double t, long n,
                                        const QuadSpec& q = {});

// Infinite activity, finite variation, x log x integrable (variance gamma):
// gap = ((g0^+ + int x^+ nu) t - E X_t^+)/(2n)
ExpansionResult expansion_fv(const LevyModel& m, double t, long n,
                             const QuadSpec& q = {});

// Strictly stable refinement: lim n^{1/alpha} gap = -t^{1/alpha} zeta(1-1/alpha) E X_1^+
double stable_limit(double alpha, double t, double ex1_plus);

} // namespace levysup
