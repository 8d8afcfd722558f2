#include "levysup/levy_model.hpp"
#include "levysup/errors.hpp"
#include "levysup/math.hpp"

#include <cmath>
#include <sstream>

namespace levysup {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// total mass constant of the stable Levy density: nu(dx) = c+/x^{1+a} (x>0),
// c-/|x|^{1+a} (x<0), with c+ + c- = -scale^a / (Gamma(-a) cos(pi a/2)).
double stable_c_total(const StableJumps& st) {
    const double a = st.alpha;
    return -std::pow(st.scale, a) / (std::tgamma(-a) * std::cos(kPi * a / 2.0));
}

} // namespace

// ---------------------------------------------------------------------------
// jump-law helpers
// ---------------------------------------------------------------------------

double jump_mean(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) { return j.mu; },
            [](const DoubleExponentialJump& j) {
                return j.p / j.eta_plus - (1.0 - j.p) / j.eta_minus;
            },
            [](const PointMassJump& j) { return j.value; }},
        law);
}

double jump_mean_pos(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) {
                return j.sd * norm_pdf(j.mu / j.sd) + j.mu * norm_cdf(j.mu / j.sd);
            },
            [](const DoubleExponentialJump& j) { return j.p / j.eta_plus; },
            [](const PointMassJump& j) { return j.value > 0.0 ? j.value : 0.0; }},
        law);
}

double jump_mean_abs(const JumpLaw& law) {
    return jump_mean_pos(law) + jump_mean_pos(jump_reflect(law));
}

std::complex<double> jump_cf(const JumpLaw& law, double u) {
    using C = std::complex<double>;
    return std::visit(
        overloaded{
            [u](const NormalJump& j) {
                return std::exp(C(-0.5 * j.sd * j.sd * u * u, j.mu * u));
            },
            [u](const DoubleExponentialJump& j) {
                return j.p * j.eta_plus / C(j.eta_plus, -u) +
                       (1.0 - j.p) * j.eta_minus / C(j.eta_minus, u);
            },
            [u](const PointMassJump& j) { return std::exp(C(0.0, j.value * u)); }},
        law);
}

double jump_exp_moment(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) { return std::exp(j.mu + 0.5 * j.sd * j.sd); },
            [](const DoubleExponentialJump& j) -> double {
                if (j.eta_plus <= 1.0 && j.p > 0.0)
                    throw MomentFailure("E e^Y infinite: eta_plus <= 1");
                double v = (1.0 - j.p) * j.eta_minus / (j.eta_minus + 1.0);
                if (j.p > 0.0) v += j.p * j.eta_plus / (j.eta_plus - 1.0);
                return v;
            },
            [](const PointMassJump& j) { return std::exp(j.value); }},
        law);
}

bool jump_exp_moment_finite(const JumpLaw& law, double q) {
    if (q <= 0.0) return true;
    return std::visit(
        overloaded{
            [](const NormalJump&) { return true; },
            [q](const DoubleExponentialJump& j) { return j.p == 0.0 || q < j.eta_plus; },
            [](const PointMassJump&) { return true; }},
        law);
}

double jump_mean_in_unit_ball(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) {
                const double a = (-1.0 - j.mu) / j.sd;
                const double b = (1.0 - j.mu) / j.sd;
                return j.mu * (norm_cdf(b) - norm_cdf(a)) -
                       j.sd * (norm_pdf(b) - norm_pdf(a));
            },
            [](const DoubleExponentialJump& j) {
                auto half = [](double eta) {
                    return (1.0 - std::exp(-eta) * (1.0 + eta)) / eta;
                };
                return j.p * half(j.eta_plus) - (1.0 - j.p) * half(j.eta_minus);
            },
            [](const PointMassJump& j) {
                return std::fabs(j.value) <= 1.0 ? j.value : 0.0;
            }},
        law);
}

double jump_mean_above_one(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) {
                const double b = (1.0 - j.mu) / j.sd;
                return j.mu * (1.0 - norm_cdf(b)) + j.sd * norm_pdf(b);
            },
            [](const DoubleExponentialJump& j) {
                return j.p * std::exp(-j.eta_plus) * (1.0 + j.eta_plus) / j.eta_plus;
            },
            [](const PointMassJump& j) { return j.value > 1.0 ? j.value : 0.0; }},
        law);
}

double jump_second_moment_in_unit_ball(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) {
                const double a = (-1.0 - j.mu) / j.sd;
                const double b = (1.0 - j.mu) / j.sd;
                const double dPhi = norm_cdf(b) - norm_cdf(a);
                return j.mu * j.mu * dPhi +
                       2.0 * j.mu * j.sd * (norm_pdf(a) - norm_pdf(b)) +
                       j.sd * j.sd *
                           (dPhi + a * norm_pdf(a) - b * norm_pdf(b));
            },
            [](const DoubleExponentialJump& j) {
                auto half = [](double eta) {
                    return (2.0 - std::exp(-eta) * (eta * eta + 2.0 * eta + 2.0)) /
                           (eta * eta);
                };
                return j.p * half(j.eta_plus) + (1.0 - j.p) * half(j.eta_minus);
            },
            [](const PointMassJump& j) {
                return std::fabs(j.value) <= 1.0 ? j.value * j.value : 0.0;
            }},
        law);
}

JumpLaw jump_reflect(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) { return JumpLaw(NormalJump{-j.mu, j.sd}); },
            [](const DoubleExponentialJump& j) {
                return JumpLaw(DoubleExponentialJump{1.0 - j.p, j.eta_minus, j.eta_plus});
            },
            [](const PointMassJump& j) { return JumpLaw(PointMassJump{-j.value}); }},
        law);
}

bool jump_has_positive_part(const JumpLaw& law) {
    return std::visit(
        overloaded{
            [](const NormalJump& j) { return j.sd > 0.0 || j.mu > 0.0; },
            [](const DoubleExponentialJump& j) { return j.p > 0.0; },
            [](const PointMassJump& j) { return j.value > 0.0; }},
        law);
}

// ---------------------------------------------------------------------------
// model
// ---------------------------------------------------------------------------

void LevyModel::validate() const {
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    if (!std::isfinite(gamma) || !std::isfinite(sigma))
        throw DomainError("model parameters must be finite");
    std::visit(
        overloaded{
            [](const NoJumps&) {},
            [](const CompoundPoisson& cp) {
                if (!(cp.rate > 0.0)) throw DomainError("compound Poisson rate must be > 0");
                std::visit(
                    overloaded{
                        [](const NormalJump& j) {
                            if (!(j.sd > 0.0)) throw DomainError("jump sd must be > 0");
                        },
                        [](const DoubleExponentialJump& j) {
                            if (!(j.p >= 0.0 && j.p <= 1.0))
                                throw DomainError("jump p must be in [0,1]");
                            if (!(j.eta_plus > 0.0 && j.eta_minus > 0.0))
                                throw DomainError("jump eta must be > 0");
                        },
                        [](const PointMassJump&) {}},
                    cp.law);
            },
            [](const VarianceGamma& vg) {
                if (!(vg.vg_sigma > 0.0 && vg.vg_nu > 0.0))
                    throw DomainError("vg_sigma and vg_nu must be > 0");
            },
            [](const StableJumps& st) {
                if (!(st.alpha > 1.0 && st.alpha < 2.0))
                    throw DomainError("stable alpha must be in (1,2)");
                if (!(st.scale > 0.0)) throw DomainError("stable scale must be > 0");
                if (!(st.skew >= -1.0 && st.skew <= 1.0))
                    throw DomainError("stable skew must be in [-1,1]");
            }},
        jumps);
}

VgTails vg_tails(const VarianceGamma& vg) {
    const double half = 0.5 * vg.theta * vg.vg_nu;
    const double root =
        std::sqrt(half * half + 0.5 * vg.vg_sigma * vg.vg_sigma * vg.vg_nu);
    return VgTails{root + half, root - half};
}

std::complex<double> char_exponent(const LevyModel& m, double u) {
    using C = std::complex<double>;
    const C diffusion(-0.5 * m.sigma * m.sigma * u * u, 0.0);
    return std::visit(
        overloaded{
            [&](const NoJumps&) { return C(0.0, m.gamma * u) + diffusion; },
            [&](const CompoundPoisson& cp) {
                const double g0 = m.gamma - cp.rate * jump_mean_in_unit_ball(cp.law);
                return C(0.0, g0 * u) + diffusion +
                       cp.rate * (jump_cf(cp.law, u) - 1.0);
            },
            [&](const VarianceGamma& vg) {
                const double g0 = drift_gamma0(m);
                const C arg(1.0 + 0.5 * vg.vg_sigma * vg.vg_sigma * vg.vg_nu * u * u,
                            -vg.theta * vg.vg_nu * u);
                return C(0.0, g0 * u) + diffusion - std::log(arg) / vg.vg_nu;
            },
            [&](const StableJumps& st) {
                const double a = st.alpha;
                const double mod = std::pow(st.scale * std::fabs(u), a);
                const double sgn = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
                return C(0.0, m.gamma * u) + diffusion +
                       C(-mod, mod * st.skew * sgn * std::tan(kPi * a / 2.0));
            }},
        m.jumps);
}

double nu_mean_in_unit_ball(const LevyModel& m) {
    return std::visit(
        overloaded{
            [](const NoJumps&) { return 0.0; },
            [](const CompoundPoisson& cp) {
                return cp.rate * jump_mean_in_unit_ball(cp.law);
            },
            [](const VarianceGamma& vg) {
                const VgTails b = vg_tails(vg);
                auto side = [&](double bb) {
                    return bb * (1.0 - std::exp(-1.0 / bb)) / vg.vg_nu;
                };
                return side(b.b_pos) - side(b.b_neg);
            },
            [](const StableJumps&) -> double {
                throw UnsupportedClass(
                    "int_{|x|<=1} x nu(dx) diverges for stable jumps");
            }},
        m.jumps);
}

double nu_mean_above_one(const LevyModel& m) {
    return std::visit(
        overloaded{
            [](const NoJumps&) { return 0.0; },
            [](const CompoundPoisson& cp) {
                return cp.rate * jump_mean_above_one(cp.law);
            },
            [](const VarianceGamma& vg) {
                const VgTails b = vg_tails(vg);
                return b.b_pos * std::exp(-1.0 / b.b_pos) / vg.vg_nu;
            },
            [](const StableJumps& st) {
                const double c_pos = stable_c_total(st) * 0.5 * (1.0 + st.skew);
                return c_pos / (st.alpha - 1.0);
            }},
        m.jumps);
}

double nu_pos_mean(const LevyModel& m) {
    return std::visit(
        overloaded{
            [](const NoJumps&) { return 0.0; },
            [](const CompoundPoisson& cp) { return cp.rate * jump_mean_pos(cp.law); },
            [](const VarianceGamma& vg) { return vg_tails(vg).b_pos / vg.vg_nu; },
            [](const StableJumps&) -> double {
                throw UnsupportedClass("int_{R+} x nu(dx) diverges for stable jumps");
            }},
        m.jumps);
}

double nu_second_moment_in_unit_ball(const LevyModel& m) {
    return std::visit(
        overloaded{
            [](const NoJumps&) { return 0.0; },
            [](const CompoundPoisson& cp) {
                return cp.rate * jump_second_moment_in_unit_ball(cp.law);
            },
            [](const VarianceGamma& vg) {
                auto side = [&](double b) {
                    return b * b * (1.0 - std::exp(-1.0 / b) * (1.0 + 1.0 / b)) /
                           vg.vg_nu;
                };
                const VgTails b = vg_tails(vg);
                return side(b.b_pos) + side(b.b_neg);
            },
            [](const StableJumps& st) {
                return stable_c_total(st) / (2.0 - st.alpha);
            }},
        m.jumps);
}

double drift_gamma0(const LevyModel& m) {
    if (std::holds_alternative<StableJumps>(m.jumps))
        throw UnsupportedClass("gamma_0 undefined for infinite-variation jumps");
    return m.gamma - nu_mean_in_unit_ball(m);
}

LevyModel dual(const LevyModel& m) {
    LevyModel d;
    d.gamma = -m.gamma;
    d.sigma = m.sigma;
    d.jumps = std::visit(
        overloaded{
            [](const NoJumps&) { return JumpSpec(NoJumps{}); },
            [](const CompoundPoisson& cp) {
                return JumpSpec(CompoundPoisson{cp.rate, jump_reflect(cp.law)});
            },
            [](const VarianceGamma& vg) {
                return JumpSpec(VarianceGamma{-vg.theta, vg.vg_sigma, vg.vg_nu});
            },
            [](const StableJumps& st) {
                return JumpSpec(StableJumps{st.alpha, st.scale, -st.skew});
            }},
        m.jumps);
    return d;
}

ModelClass classify(const LevyModel& m) {
    ModelClass c{};
    c.has_diffusion = m.sigma > 0.0;
    std::visit(
        overloaded{
            [&](const NoJumps&) {
                c.finite_activity = true;
                c.finite_variation = !c.has_diffusion;
                c.positive_jumps = false;
                c.integrable = c.sup_integrable = true;
                c.x_log_x = true;
            },
            [&](const CompoundPoisson& cp) {
                c.finite_activity = true;
                c.finite_variation = !c.has_diffusion;
                c.positive_jumps = jump_has_positive_part(cp.law);
                c.integrable = c.sup_integrable = true; // finite per catalog laws
                c.x_log_x = true;
            },
            [&](const VarianceGamma&) {
                c.finite_activity = false;
                c.finite_variation = !c.has_diffusion;
                c.positive_jumps = true;
                c.integrable = c.sup_integrable = true; // exponential tails
                c.x_log_x = true; // density ~ 1/|x| near 0
            },
            [&](const StableJumps& st) {
                c.finite_activity = false;
                c.finite_variation = false;
                c.positive_jumps = st.skew > -1.0;
                c.integrable = c.sup_integrable = true; // alpha > 1
                c.x_log_x = false;
            }},
        m.jumps);
    return c;
}

bool check_exp_moment(const LevyModel& m, double q) {
    if (q <= 0.0) return true;
    return std::visit(
        overloaded{
            [](const NoJumps&) { return true; },
            [q](const CompoundPoisson& cp) { return jump_exp_moment_finite(cp.law, q); },
            [q](const VarianceGamma& vg) { return q < 1.0 / vg_tails(vg).b_pos; },
            [](const StableJumps& st) { return st.skew == -1.0; }},
        m.jumps);
}

double mean_rate(const LevyModel& m) {
    return std::visit(
        overloaded{
            [&](const NoJumps&) { return m.gamma; },
            [&](const CompoundPoisson& cp) {
                return drift_gamma0(m) + cp.rate * jump_mean(cp.law);
            },
            [&](const VarianceGamma& vg) { return drift_gamma0(m) + vg.theta; },
            [&](const StableJumps&) { return m.gamma; }},
        m.jumps);
}

double cumulant1(const LevyModel& m) {
    const double diff = 0.5 * m.sigma * m.sigma;
    return std::visit(
        overloaded{
            [&](const NoJumps&) { return m.gamma + diff; },
            [&](const CompoundPoisson& cp) {
                return drift_gamma0(m) + diff +
                       cp.rate * (jump_exp_moment(cp.law) - 1.0);
            },
            [&](const VarianceGamma& vg) {
                const double arg =
                    1.0 - vg.theta * vg.vg_nu - 0.5 * vg.vg_sigma * vg.vg_sigma * vg.vg_nu;
                if (!(arg > 0.0))
                    throw MomentFailure("E e^{X_1} infinite for this variance-gamma model");
                return drift_gamma0(m) + diff - std::log(arg) / vg.vg_nu;
            },
            [&](const StableJumps& st) -> double {
                if (st.skew != -1.0)
                    throw MomentFailure("E e^{X_1} infinite: stable model with positive jumps");
                return m.gamma + diff -
                       std::pow(st.scale, st.alpha) / std::cos(kPi * st.alpha / 2.0);
            }},
        m.jumps);
}

std::string model_id(const LevyModel& m) {
    std::ostringstream os;
    std::visit(
        overloaded{
            [&](const NoJumps&) { os << "bm"; },
            [&](const CompoundPoisson& cp) {
                os << "cp_";
                std::visit(
                    overloaded{[&](const NormalJump&) { os << "normal"; },
                               [&](const DoubleExponentialJump&) { os << "dexp"; },
                               [&](const PointMassJump&) { os << "pointmass"; }},
                    cp.law);
                os << "(l=" << cp.rate << ")";
            },
            [&](const VarianceGamma& vg) {
                os << "vg(th=" << vg.theta << ";s=" << vg.vg_sigma << ";nu=" << vg.vg_nu
                   << ")";
            },
            [&](const StableJumps& st) {
                os << "stable(a=" << st.alpha << ";c=" << st.scale << ";b=" << st.skew
                   << ")";
            }},
        m.jumps);
    os << "[g=" << m.gamma << ";s=" << m.sigma << "]"; // ';' separators keep the id CSV-safe
    return os.str();
}

} // namespace levysup
