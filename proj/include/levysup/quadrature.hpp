#pragma once

#include <functional>

namespace levysup {

struct QuadSpec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    int max_refinements = 5000;
    double fourier_cutoff = 256.0;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
};

// Globally adaptive Gauss-Kronrod 7/15 on [a,b].
// Throws QuadratureFailure if tolerances are unreachable within
// spec.max_refinements bisections.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadSpec& spec);

} // namespace levysup
