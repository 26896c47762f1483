#pragma once

#include <functional>
#include <vector>

namespace rpaths {

// 15-point Gauss-Kronrod rule on [lo, hi]; *err receives |K15 - G7|.
double gauss_kronrod_15(const std::function<double(double)>& f, double lo,
                        double hi, double* err);

// Adaptive bisection until the summed Kronrod error estimate drops below
// abs_tol. Throws QuadratureFailure if the interval budget is exhausted.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-10, int max_intervals = 400000);

// Same, but the integration range is pre-split at the given breakpoints
// (useful for integrands with sharp peaks or kinks at known locations).
double integrate_split(const std::function<double(double)>& f,
                       std::vector<double> breakpoints, double abs_tol = 1e-10,
                       int max_intervals = 400000);

// Breakpoints geometrically clustered towards `target` inside [lo, hi],
// down to a minimum offset of |hi-lo| * 2^-depth.
std::vector<double> geometric_cluster(double lo, double hi, double target,
                                      int depth = 44);

}  // namespace rpaths
