#pragma once

#include <cmath>

namespace levysup {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

inline double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Wichura's AS241 (PPND16), |error| < 1e-15 over (0,1).
double inv_norm_cdf(double p);

// Riemann zeta on the critical strip segment s in (0,1), via the
// Cohen-Rodriguez Villegas-Zagier accelerated alternating series.
// Absolute error below 1e-12. Throws DomainError outside (0,1).
double riemann_zeta_unit_interval(double s);

// E max(0, N(mean, var)); var = 0 degenerates to max(mean, 0).
inline double gaussian_positive_part_mean(double mean, double var) {
    if (var <= 0.0) return mean > 0.0 ? mean : 0.0;
    const double sd = std::sqrt(var);
    return sd * norm_pdf(mean / sd) + mean * norm_cdf(mean / sd);
}

} // namespace levysup
