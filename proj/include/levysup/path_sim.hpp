#pragma once

#include "levysup/levy_model.hpp"
#include "levysup/quadrature.hpp"
#include "levysup/rng.hpp"

#include <optional>
#include <vector>

namespace levysup {

struct PathGrid {
    std::vector<double> times;  // n+1 entries, 0 = times[0] < ... < times[n] = t
    std::vector<double> values; // values[0] = 0
};

enum class Exactness { exact, fine_grid_biased };

struct SupremumSample {
    double terminal = 0.0;
    double discrete_max = 0.0; // over grid points, including X_0 = 0
    double discrete_min = 0.0;
    std::optional<double> continuous_max;
    std::optional<double> continuous_min;
    Exactness exactness = Exactness::exact;
};

// one draw from the jump-size law
double sample_jump(const JumpLaw& law, PathStream& stream);

// one draw of X_dt
double sample_increment(const LevyModel& m, double dt, PathStream& stream);

// cumulative sum of n i.i.d. increments of size t/n
PathGrid simulate_grid(const LevyModel& m, double t, long n, PathStream& stream);

// Draw of the maximum of a Brownian bridge with endpoints x, y and variance
// var, by the inverse-transform ((x+y) + sqrt((x-y)^2 - 2 var ln u))/2.
double bridge_max(double x, double y, double var, double u);

// Exact supremum for finite-activity models: the path is evaluated at the
// union of grid points and jump times; between evaluation points it is a
// Brownian segment (sigma > 0, supremum via bridge_max) or a line (sigma = 0).
// continuous_min is drawn from the per-segment minimum law with independent
// uniforms, so its marginal is exact but its joint law with continuous_max
// within a segment is not preserved.
// grid_values, when given, receives X at the n grid points t/n, ..., t so
// callers can form maxima over nested subgrids from the same draw
SupremumSample simulate_jd_supremum(const LevyModel& m, double t, long n,
                                    PathStream& stream,
                                    std::vector<double>* grid_values = nullptr);

// Any model: simulate n_coarse*refine_factor grid steps; continuous extrema
// are approximated by the fine-grid extrema (exactness = fine_grid_biased),
// the discrete maximum is read off the coarse subgrid.
SupremumSample fine_grid_supremum(const LevyModel& m, double t, long n_coarse,
                                  long refine_factor, PathStream& stream);

// Conservative estimate of E M_t - E M_t^n used as the bias budget of
// fine-grid extrema, derived from the model's rate class.
double discretization_bias_bound(const LevyModel& m, double t, long n_fine,
                                 const QuadSpec& q = {});

} // namespace levysup
