#pragma once

#include "levysup/asymptotics.hpp"
#include "levysup/mc.hpp"
#include "levysup/pricing.hpp"
#include "levysup/spitzer.hpp"

#include <string>
#include <vector>

namespace levysup {

enum class GapEngine { spitzer, mc };

struct GapEntry {
    long n = 0;
    double gap = 0.0;
    double gap_se = 0.0;   // MC standard error, or the deterministic budget
    double predicted = 0.0; // from the model's rate prediction, 0 if none
};

struct GapCurve {
    std::string model;
    double t = 0.0;
    std::vector<GapEntry> entries;
    GapEngine engine = GapEngine::spitzer;
    std::uint64_t seed = 0;
};

// n_list must be ascending powers of two (nested grids). The mc engine uses
// common random numbers: every subgrid maximum is read off one fine path.
GapCurve run_gap_study(const LevyModel& m, double t,
                       const std::vector<long>& n_list, GapEngine engine,
                       const McParams& mc = {}, const QuadSpec& q = {},
                       long refine_factor = 8);

struct RateFit {
    double slope = 0.0;     // log-log least squares
    double log_coef = 0.0;  // coefficient of log n in the level fit of gap*n
    double intercept = 0.0;
    double r2 = 0.0;
};

RateFit fit_rate(const GapCurve& curve, bool with_log_factor);

struct VerifyReport {
    bool pass = false;
    double slope = 0.0;
    double scaled_last = 0.0; // gap at largest n under the class scaling
    double target = 0.0;      // predicted limit of the scaled gap, 0 if none
    std::string detail;
};

// coeff_tol is the relative tolerance on the scaled-gap limit where the
// prediction carries one
VerifyReport verify_prediction(const GapCurve& curve, const RatePrediction& pred,
                               double coeff_tol = 0.10);

struct CorrectionRow {
    long n;
    double v_discrete, v_discrete_se;
    double v_continuous, v_continuous_se;
    double v_corrected;
    double raw_err;  // |v_discrete - v_continuous|
    double corr_err; // |v_discrete - v_corrected|
};

struct CorrectionTable {
    std::vector<CorrectionRow> rows;
};

// Per n: discrete and continuous prices from one common-random-number sample
// set, plus the corrected discrete price obtained from the continuous pricer
// with the shifted extremum re-evaluated on the same paths.
CorrectionTable run_correction_study(const OptionSpec& spec, const LevyModel& m,
                                     const MarketSpec& market,
                                     const std::vector<long>& n_list,
                                     const McParams& mc);

// CSV emission: UTF-8, LF, 17 significant digits
std::string gap_curve_csv(const GapCurve& curve, const std::string& study);
std::string correction_csv(const CorrectionTable& table);

} // namespace levysup
