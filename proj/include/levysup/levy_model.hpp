#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

namespace levysup {

// ---------------------------------------------------------------------------
// Jump laws (the common distribution of the i.i.d. compound-Poisson jumps)
// ---------------------------------------------------------------------------

struct NormalJump {
    double mu;
    double sd; // > 0
};

// density p*eta_plus*exp(-eta_plus*x) for x>0, (1-p)*eta_minus*exp(eta_minus*x) for x<0
struct DoubleExponentialJump {
    double p;         // in [0,1]
    double eta_plus;  // > 0
    double eta_minus; // > 0
};

struct PointMassJump {
    double value;
};

using JumpLaw = std::variant<NormalJump, DoubleExponentialJump, PointMassJump>;

double jump_mean(const JumpLaw& law);
double jump_mean_pos(const JumpLaw& law); // E Y+
double jump_mean_abs(const JumpLaw& law);
std::complex<double> jump_cf(const JumpLaw& law, double u);
double jump_exp_moment(const JumpLaw& law); // E e^Y, throws MomentFailure if infinite
bool jump_exp_moment_finite(const JumpLaw& law, double q); // E e^{qY+} side only
double jump_mean_in_unit_ball(const JumpLaw& law);       // E[Y 1_{|Y|<=1}]
double jump_mean_above_one(const JumpLaw& law);          // E[Y 1_{Y>1}]
double jump_second_moment_in_unit_ball(const JumpLaw& law); // E[Y^2 1_{|Y|<=1}]
JumpLaw jump_reflect(const JumpLaw& law); // law of -Y
bool jump_has_positive_part(const JumpLaw& law);

// ---------------------------------------------------------------------------
// Jump specifications
// ---------------------------------------------------------------------------

struct NoJumps {};

struct CompoundPoisson {
    double rate; // lambda > 0
    JumpLaw law;
};

// Gamma-time-changed Brownian motion: V_t = theta*G_t + vg_sigma*B_{G_t},
// G a gamma subordinator with E G_t = t, Var G_t = vg_nu*t.
struct VarianceGamma {
    double theta;
    double vg_sigma; // > 0
    double vg_nu;    // > 0
};

// One-dimensional strictly alpha-stable jump part, alpha in (1,2), in the
// S1 parameterization: exponent -scale^alpha |u|^alpha (1 - i*skew*sgn(u)*tan(pi*alpha/2)).
struct StableJumps {
    double alpha; // in (1,2)
    double scale; // > 0
    double skew;  // in [-1,1]
};

using JumpSpec = std::variant<NoJumps, CompoundPoisson, VarianceGamma, StableJumps>;

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

// Generating triplet (gamma, sigma^2, nu) with truncation function 1_{|x|<=1}.
struct LevyModel {
    double gamma = 0.0;
    double sigma = 0.0; // >= 0
    JumpSpec jumps = NoJumps{};

    void validate() const; // throws DomainError on parameter violations
};

struct ModelClass {
    bool finite_activity;
    bool finite_variation; // of the whole process: sigma == 0 and FV jumps
    bool has_diffusion;
    bool positive_jumps;
    bool integrable;     // int_{|x|>1} |x| nu(dx) < infinity
    bool sup_integrable; // int_{x>1} x nu(dx) < infinity
    bool x_log_x;        // int_{|x|<=1} |x| |log|x|| nu(dx) < infinity (FV jumps only)
};

// E e^{iuX_t} = exp(t * char_exponent(model, u))
std::complex<double> char_exponent(const LevyModel& m, double u);

// gamma_0 = gamma - int_{|x|<=1} x nu(dx); throws UnsupportedClass for
// infinite-variation jumps (stable).
double drift_gamma0(const LevyModel& m);

// model of -X
LevyModel dual(const LevyModel& m);

ModelClass classify(const LevyModel& m);

// true iff int_{x>1} e^{qx} nu(dx) < infinity
bool check_exp_moment(const LevyModel& m, double q);

// E X_1 (model must be integrable)
double mean_rate(const LevyModel& m);

// log E e^{X_1}; throws MomentFailure when infinite
double cumulant1(const LevyModel& m);

// -- closed-form nu integrals used by bounds and expansions --------------

double nu_mean_in_unit_ball(const LevyModel& m);   // int_{|x|<=1} x nu(dx)
double nu_mean_above_one(const LevyModel& m);      // int_{x>1} x nu(dx)
double nu_pos_mean(const LevyModel& m);            // int_{R+} x nu(dx) (FV jumps)
double nu_second_moment_in_unit_ball(const LevyModel& m); // int_{|x|<=1} x^2 nu(dx)

// Variance-gamma exponential tail scales: nu(dx) = e^{-x/b_p}/(nu x) dx on x>0,
// e^{-|x|/b_n}/(nu |x|) dx on x<0.
struct VgTails {
    double b_pos;
    double b_neg;
};
VgTails vg_tails(const VarianceGamma& vg);

// short human-readable identifier, e.g. "cp_normal(s=0.2,l=3)"
std::string model_id(const LevyModel& m);

} // namespace levysup
