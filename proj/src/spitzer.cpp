#include "levysup/spitzer.hpp"
#include "levysup/errors.hpp"
#include "levysup/math.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace levysup {

namespace {

using cd = std::complex<double>;

constexpr double kFourierCap = 1e7;

// 1 - Re e^z, stable against cancellation for |z| -> 0:
// 1 - e^re cos(im) = -expm1(re) + e^re * 2 sin^2(im/2)
inline double one_minus_re_exp(const cd& z) {
    const double s = std::sin(0.5 * z.imag());
    return -std::expm1(z.real()) + std::exp(z.real()) * 2.0 * s * s;
}

// coefficients of the linear/sqrt bound E X_s^+ <= a*s + b*sqrt(s); the same
// pair evaluated at s = t is the closed-form bound on E M_t
struct BoundCoeffs {
    double a;
    double b;
};

BoundCoeffs pos_part_bound_coeffs(const LevyModel& m) {
    if (std::holds_alternative<StableJumps>(m.jumps)) {
        // infinite variation jumps: only the general form applies
        const double a = std::max(m.gamma, 0.0) + nu_mean_above_one(m);
        const double b = m.sigma * std::sqrt(2.0 / kPi) +
                         2.0 * std::sqrt(nu_second_moment_in_unit_ball(m));
        return {a, b};
    }
    // finite-variation jumps: sharper form in the drift and positive jump mass
    const double a = std::max(drift_gamma0(m), 0.0) + nu_pos_mean(m);
    const double b = m.sigma * std::sqrt(2.0 / kPi);
    return {a, b};
}

ValErr positive_part_series(const LevyModel& m, const CompoundPoisson& cp,
                            double s, const QuadSpec& q) {
    const double g0 = drift_gamma0(m);
    const double var_diff = m.sigma * m.sigma * s;
    const double mean_abs_jump = jump_mean_abs(cp.law);
    const double lam_s = cp.rate * s;

    const auto term = [&](long k, double* err) -> double {
        *err = 0.0;
        if (k == 0) return gaussian_positive_part_mean(g0 * s, var_diff);
        if (const auto* nj = std::get_if<NormalJump>(&cp.law))
            return gaussian_positive_part_mean(g0 * s + k * nj->mu,
                                               var_diff + k * nj->sd * nj->sd);
        if (const auto* pm = std::get_if<PointMassJump>(&cp.law))
            return gaussian_positive_part_mean(g0 * s + k * pm->value, var_diff);
        // double-exponential: W_k = g0*s + sigma*sqrt(s)*Z + sum of k jumps,
        // E W_k^+ = (E W_k + E|W_k|)/2 with E|W_k| by Fourier
        const auto log_cf = [&](double u) -> cd {
            return cd(-0.5 * var_diff * u * u, g0 * s * u) +
                   static_cast<double>(k) * std::log(jump_cf(cp.law, u));
        };
        const ValErr abs_mean = fourier_abs_mean(log_cf, q);
        *err = 0.5 * abs_mean.error;
        return 0.5 * (g0 * s + k * jump_mean(cp.law) + abs_mean.value);
    };

    double value = 0.0, err = 0.0;
    double pk = std::exp(-lam_s); // P(N_s = k), updated iteratively
    const double head = std::fabs(g0) * s + m.sigma * std::sqrt(s);
    long k = 0;
    for (;;) {
        double terr;
        value += pk * term(k, &terr);
        err += pk * terr;
        // residual over k' > k: p_{k'} falls at least geometrically with
        // ratio r once k >= lam_s, so
        //   sum p_{k'} (head + k' * E|Y|)
        //     <= p_{k+1} * [ (head + (k+1) E|Y|)/(1-r) + E|Y| r/(1-r)^2 ]
        const double pk1 = pk * lam_s / (k + 1);
        if (k + 2 > lam_s) {
            const double r = lam_s / (k + 2);
            const double resid =
                pk1 * ((head + (k + 1) * mean_abs_jump) / (1.0 - r) +
                       mean_abs_jump * r / ((1.0 - r) * (1.0 - r)));
            if (resid < 0.5 * q.abs_tol || pk1 == 0.0) {
                err += resid;
                break;
            }
        }
        pk = pk1;
        ++k;
        if (k > 10000)
            throw QuadratureFailure("positive-part series did not converge");
    }
    return {value, err};
}

ValErr positive_part_vg(const LevyModel& m, const VarianceGamma& vg, double s,
                        const QuadSpec& q) {
    const double g0 = drift_gamma0(m);
    const double nu = vg.vg_nu;
    const double a = s / nu; // gamma subordinator shape at time s
    const double var_diff = m.sigma * m.sigma * s;

    const auto F = [&](double g) {
        return gaussian_positive_part_mean(g0 * s + vg.theta * g,
                                           var_diff + vg.vg_sigma * vg.vg_sigma * g);
    };
    const double f0 = F(0.0);
    // F(g) <= c1 + c2*g for the tail bound, and the mean/sd of the
    // conditional Gaussian move by at most theta*g and sigma_vg*sqrt(g),
    // so |F(g) - F(0)| <= c_delta * (sqrt(g) + g)
    const double c1 = std::fabs(g0) * s + std::sqrt(var_diff);
    const double c2 = std::fabs(vg.theta) + vg.vg_sigma;
    const double c_delta = std::fabs(vg.theta) + vg.vg_sigma + 1e-300;

    const double lognorm = std::lgamma(a) + a * std::log(nu);
    const auto log_density = [&](double g) {
        return (a - 1.0) * std::log(g) - g / nu - lognorm;
    };

    // grow the cut g_hi until the gamma tail contributes below tolerance;
    // Q(a, g_hi/nu) <= 2*nu*density(g_hi) once g_hi >= 2*a*nu
    double g_hi = std::max(2.0 * s + 2.0 * nu, 8.0 * nu);
    double tail_err;
    for (;;) {
        tail_err =
            2.0 * nu * std::exp(log_density(g_hi)) * (f0 + c1 + c2 * (g_hi + nu));
        if (tail_err < 0.1 * q.abs_tol || g_hi > 1e6 * nu) break;
        g_hi *= 2.0;
    }

    // E F(G) = F(0) + E[F(G) - F(0)]. Integrating the correction in y = log g
    // gives the integrand e^{a y - e^y/nu - lognorm} (F(e^y) - F(0)), which is
    // smooth and decays at rate a + 1/2 as y -> -inf for every shape a; the
    // raw density's g^{a-1} singularity (severe for small a = s/nu) never
    // appears. The lower cut y_lo makes the truncated piece below tolerance.
    const double y_hi = std::log(g_hi);
    double y_lo = (std::log(0.05 * q.abs_tol) + std::log(a + 0.5) + lognorm -
                   std::log(c_delta)) /
                  (a + 0.5);
    y_lo = std::min(y_lo, y_hi - 1.0);
    const QuadResult r = integrate(
        [&](double y) {
            const double g = std::exp(y);
            return std::exp(a * y - g / nu - lognorm) * (F(g) - f0);
        },
        y_lo, y_hi, q);
    return {std::max(f0 + r.value, 0.0), r.error + tail_err + 0.1 * q.abs_tol};
}

// Stable route: the Fourier integrand behaves like u^{alpha-2} at zero, an
// integrable singularity that defeats the error estimate; u = v^k with
// k = 2/(alpha-1) renders it vanishing at the origin.
ValErr positive_part_stable(const LevyModel& m, const StableJumps& st, double s,
                            const QuadSpec& q) {
    const auto log_cf = [&](double u) { return s * char_exponent(m, u); };
    double U = q.fourier_cutoff;
    while (std::exp(log_cf(U).real()) > 1e-12 && U < kFourierCap) U *= 2.0;

    const double k = std::max(2.0, 2.0 / (st.alpha - 1.0));
    const QuadResult r = integrate(
        [&](double v) {
            const double u = std::pow(v, k);
            return k * one_minus_re_exp(log_cf(u)) / (u * u) * (u / v);
        },
        0.0, std::pow(U, 1.0 / k), q);

    double tail_mag = 0.0;
    for (const double v : {U, 1.7 * U, 3.1 * U})
        tail_mag = std::max(tail_mag, std::exp(log_cf(v).real()));
    const double abs_mean = (2.0 / kPi) * (r.value + 1.0 / U);
    const double abs_err = (2.0 / kPi) * (r.error + tail_mag / U);
    return {0.5 * (mean_rate(m) * s + abs_mean), 0.5 * abs_err};
}

} // namespace

ValErr fourier_abs_mean(const std::function<cd(double)>& log_cf,
                        const QuadSpec& q) {
    double U = q.fourier_cutoff;
    while (std::exp(log_cf(U).real()) > 1e-12 && U < kFourierCap) U *= 2.0;

    const auto integrand = [&](double u) {
        return one_minus_re_exp(log_cf(u)) / (u * u);
    };
    const QuadResult r = integrate(integrand, 0.0, U, q);

    // int_U^inf (1 - Re cf)/u^2 = 1/U - int_U^inf Re cf / u^2; the second
    // piece is bounded by sup_{u >= U} |cf(u)| / U (sampled, cfs here decay)
    double tail_mag = 0.0;
    for (const double v : {U, 1.7 * U, 3.1 * U})
        tail_mag = std::max(tail_mag, std::exp(log_cf(v).real()));

    ValErr out;
    out.value = (2.0 / kPi) * (r.value + 1.0 / U);
    out.error = (2.0 / kPi) * (r.error + tail_mag / U);
    return out;
}

ValErr expected_positive_part_fourier_ex(const LevyModel& m, double s,
                                         const QuadSpec& q) {
    if (!(s > 0.0)) throw DomainError("expected_positive_part: s must be > 0");
    const ValErr abs_mean =
        fourier_abs_mean([&](double u) { return s * char_exponent(m, u); }, q);
    return {0.5 * (mean_rate(m) * s + abs_mean.value), 0.5 * abs_mean.error};
}

double expected_positive_part_fourier(const LevyModel& m, double s,
                                      const QuadSpec& q) {
    return expected_positive_part_fourier_ex(m, s, q).value;
}

ValErr expected_positive_part_ex(const LevyModel& m, double s, const QuadSpec& q) {
    if (!(s > 0.0)) throw DomainError("expected_positive_part: s must be > 0");
    // below this horizon the value is within tolerance of zero anyway and the
    // Fourier/series machinery would run out of dynamic range
    const BoundCoeffs bc = pos_part_bound_coeffs(m);
    const double ceiling = bc.a * s + bc.b * std::sqrt(s);
    if (ceiling < 1e-13) return {0.0, ceiling};

    if (std::holds_alternative<NoJumps>(m.jumps))
        return {gaussian_positive_part_mean(m.gamma * s, m.sigma * m.sigma * s),
                0.0};
    if (const auto* cp = std::get_if<CompoundPoisson>(&m.jumps))
        return positive_part_series(m, *cp, s, q);
    if (const auto* vg = std::get_if<VarianceGamma>(&m.jumps))
        return positive_part_vg(m, *vg, s, q);
    return positive_part_stable(m, std::get<StableJumps>(m.jumps), s, q);
}

double expected_positive_part(const LevyModel& m, double s, const QuadSpec& q) {
    return expected_positive_part_ex(m, s, q).value;
}

std::vector<ValErr> positive_part_grid(const LevyModel& m, double t, long n,
                                       const QuadSpec& q) {
    if (n < 1) throw DomainError("positive_part_grid: n must be >= 1");
    if (!(t > 0.0)) throw DomainError("positive_part_grid: t must be > 0");
    std::vector<ValErr> out(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k)
        out[static_cast<std::size_t>(k - 1)] =
            expected_positive_part_ex(m, k * t / n, q);
    return out;
}

ValErr discrete_sup_mean_ex(const LevyModel& m, double t, long n,
                            const QuadSpec& q) {
    const std::vector<ValErr> grid = positive_part_grid(m, t, n, q);
    double value = 0.0, err = 0.0;
    for (long k = n; k >= 1; --k) { // ascending magnitude
        value += grid[static_cast<std::size_t>(k - 1)].value / k;
        err += grid[static_cast<std::size_t>(k - 1)].error / k;
    }
    return {value, err};
}

double discrete_sup_mean(const LevyModel& m, double t, long n,
                         const QuadSpec& q) {
    return discrete_sup_mean_ex(m, t, n, q).value;
}

ValErr continuous_sup_mean_ex(const LevyModel& m, double t, const QuadSpec& q) {
    if (!(t > 0.0)) throw DomainError("continuous_sup_mean: t must be > 0");
    QuadSpec inner = q;
    inner.abs_tol = 0.1 * q.abs_tol;
    double inner_err = 0.0; // worst inner estimate, folded into the budget
    const auto h = [&](double v) {
        const ValErr e = expected_positive_part_ex(m, v * v, inner);
        inner_err = std::max(inner_err, e.error);
        return 2.0 * e.value / v;
    };
    const QuadResult r = integrate(h, 0.0, std::sqrt(t), q);
    return {r.value, r.error + 2.0 * inner_err * std::sqrt(t)};
}

double continuous_sup_mean(const LevyModel& m, double t, const QuadSpec& q) {
    return continuous_sup_mean_ex(m, t, q).value;
}

GapValue gap_mean(const LevyModel& m, double t, long n, const QuadSpec& q) {
    const ValErr cont = continuous_sup_mean_ex(m, t, q);
    const ValErr disc = discrete_sup_mean_ex(m, t, n, q);
    GapValue g;
    g.n = n;
    g.gap = cont.value - disc.value;
    g.error_budget = cont.error + disc.error;
    g.method =
        classify(m).finite_activity ? GapMethod::series : GapMethod::fourier;
    return g;
}

double sup_mean_bound(const LevyModel& m, double t) {
    if (!(t > 0.0)) throw DomainError("sup_mean_bound: t must be > 0");
    const BoundCoeffs bc = pos_part_bound_coeffs(m);
    return bc.a * t + bc.b * std::sqrt(t);
}

} // namespace levysup
