#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rpaths/rng.hpp"

namespace rpaths {

struct EmpiricalDistribution {
  std::vector<double> sorted_values;

  static EmpiricalDistribution from(std::vector<double> values);
  size_t n() const { return sorted_values.size(); }
};

// sup_x |F_n(x) - F(x)| evaluated with both one-sided gaps at each order
// statistic.
double ks_distance(const EmpiricalDistribution& e,
                   const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(const EmpiricalDistribution& a,
                              const EmpiricalDistribution& b);

// Percentile bootstrap CI for the mean. Deterministic under a fixed stream.
std::pair<double, double> bootstrap_mean_ci(const EmpiricalDistribution& e,
                                            double level, int resamples,
                                            RngStream& rng);

// Bootstrap standard error of the mean.
double bootstrap_mean_se(const EmpiricalDistribution& e, int resamples,
                         RngStream& rng);

struct HistogramBin {
  double center;
  double density;
};

// Equal-width histogram normalized to unit mass.
std::vector<HistogramBin> histogram_density(const EmpiricalDistribution& e,
                                            int bin_count);

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);

// Euler-Mascheroni constant, computed once by Euler-Maclaurin acceleration of
// H_n - log n and cached.
double euler_gamma();

double normal_cdf(double x);

}  // namespace rpaths
