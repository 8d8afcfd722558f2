#pragma once

#include "levysup/levy_model.hpp"
#include "levysup/quadrature.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace levysup {

enum class GapMethod { series, fourier };

struct GapValue {
    long n = 0;
    double gap = 0.0;
    double error_budget = 0.0;
    GapMethod method = GapMethod::series;
};

struct ValErr {
    double value = 0.0;
    double error = 0.0;
};

// E X_s^+. Deterministic route chosen per model class:
//   finite activity      : Poisson-weighted series of Gaussian closed forms
//                          (double-exponential jumps fall back to a per-term
//                           Fourier evaluation of E|W|)
//   variance gamma       : quadrature against the gamma subordinator density
//   stable               : Fourier identity for E|X_s|
ValErr expected_positive_part_ex(const LevyModel& m, double s, const QuadSpec& q);
double expected_positive_part(const LevyModel& m, double s, const QuadSpec& q = {});

// Route (b) for any model: E X^+ = (E X + E|X|)/2 with
// E|X_s| = (2/pi) int_0^inf (1 - Re e^{s phi(u)}) / u^2 du.
ValErr expected_positive_part_fourier_ex(const LevyModel& m, double s,
                                         const QuadSpec& q);
double expected_positive_part_fourier(const LevyModel& m, double s,
                                      const QuadSpec& q = {});

// E|W| for a random variable given through the log of its characteristic
// function. Exposed for reuse by the expansion coefficients.
ValErr fourier_abs_mean(const std::function<std::complex<double>(double)>& log_cf,
                        const QuadSpec& q);

// E M_t^n = sum_{k=1..n} E X_{kt/n}^+ / k
ValErr discrete_sup_mean_ex(const LevyModel& m, double t, long n, const QuadSpec& q);
double discrete_sup_mean(const LevyModel& m, double t, long n, const QuadSpec& q = {});

// E M_t = int_0^t E X_s^+ / s ds, with the s = v^2 substitution taming the
// 1/sqrt(s) behavior of the integrand near zero
ValErr continuous_sup_mean_ex(const LevyModel& m, double t, const QuadSpec& q);
double continuous_sup_mean(const LevyModel& m, double t, const QuadSpec& q = {});

GapValue gap_mean(const LevyModel& m, double t, long n, const QuadSpec& q = {});

// closed-form upper bound on E M_t
double sup_mean_bound(const LevyModel& m, double t);

// E X_s^+ evaluated on the grid {k*t/n : k=1..n} in one pass (shared by the
// gap studies so nested grids reuse evaluations); entry k-1 holds s = k*t/n
std::vector<ValErr> positive_part_grid(const LevyModel& m, double t, long n,
                                       const QuadSpec& q);

} // namespace levysup
