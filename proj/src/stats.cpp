#include "rpaths/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rpaths/errors.hpp"

namespace rpaths {

EmpiricalDistribution EmpiricalDistribution::from(std::vector<double> values) {
  if (values.empty())
    throw TooFewSamples("empirical distribution needs at least one value");
  std::sort(values.begin(), values.end());
  return EmpiricalDistribution{std::move(values)};
}

double ks_distance(const EmpiricalDistribution& e,
                   const std::function<double(double)>& cdf) {
  const auto& v = e.sorted_values;
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const double F = cdf(v[i]);
    d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
  }
  return d;
}

double ks_distance_two_sample(const EmpiricalDistribution& a,
                              const EmpiricalDistribution& b) {
  const auto& x = a.sorted_values;
  const auto& y = b.sorted_values;
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    // consume all ties at the current value on both sides before comparing,
    // otherwise identical samples report a spurious 1/n gap
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() -
                             static_cast<double>(j) / y.size()));
  }
  return d;
}

std::pair<double, double> bootstrap_mean_ci(const EmpiricalDistribution& e,
                                            double level, int resamples,
                                            RngStream& rng) {
  if (e.n() < 30) throw TooFewSamples("bootstrap_mean_ci: n < 30");
  if (!(level > 0 && level < 1))
    throw DomainError("bootstrap_mean_ci: level must be in (0,1)");
  const auto& v = e.sorted_values;
  std::vector<double> means(resamples);
  for (int r = 0; r < resamples; ++r) {
    double s = 0.0;
    for (size_t k = 0; k < v.size(); ++k)
      s += v[rng.next_u64() % v.size()];
    means[r] = s / static_cast<double>(v.size());
  }
  std::sort(means.begin(), means.end());
  const double tail = 0.5 * (1.0 - level);
  auto pick = [&](double q) {
    double pos = q * (resamples - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min<size_t>(lo + 1, resamples - 1);
    double w = pos - static_cast<double>(lo);
    return means[lo] * (1.0 - w) + means[hi] * w;
  };
  return {pick(tail), pick(1.0 - tail)};
}

double bootstrap_mean_se(const EmpiricalDistribution& e, int resamples,
                         RngStream& rng) {
  const auto& v = e.sorted_values;
  std::vector<double> means(resamples);
  for (int r = 0; r < resamples; ++r) {
    double s = 0.0;
    for (size_t k = 0; k < v.size(); ++k)
      s += v[rng.next_u64() % v.size()];
    means[r] = s / static_cast<double>(v.size());
  }
  const double m = mean(means);
  double acc = 0.0;
  for (double x : means) acc += (x - m) * (x - m);
  return std::sqrt(acc / (resamples - 1));
}

std::vector<HistogramBin> histogram_density(const EmpiricalDistribution& e,
                                            int bin_count) {
  if (bin_count < 2) throw DomainError("histogram_density: bin_count < 2");
  const auto& v = e.sorted_values;
  double lo = v.front(), hi = v.back();
  if (hi <= lo) hi = lo + 1.0;  // point mass: one nonzero bin
  const double width = (hi - lo) / bin_count;
  std::vector<HistogramBin> bins(bin_count);
  std::vector<double> counts(bin_count, 0.0);
  for (double x : v) {
    int b = static_cast<int>((x - lo) / width);
    b = std::clamp(b, 0, bin_count - 1);
    counts[b] += 1.0;
  }
  const double norm = 1.0 / (static_cast<double>(v.size()) * width);
  for (int b = 0; b < bin_count; ++b) {
    bins[b].center = lo + (b + 0.5) * width;
    bins[b].density = counts[b] * norm;
  }
  return bins;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size() - 1);
}

double euler_gamma() {
  // H_n - log n with Euler-Maclaurin correction terms; n = 64 leaves the
  // remainder far below 1e-12.
  static const double value = [] {
    const int n = 64;
    double h = 0.0;
    for (int k = 1; k <= n; ++k) h += 1.0 / k;
    const double x = static_cast<double>(n);
    return h - std::log(x) - 0.5 / x + 1.0 / (12.0 * x * x) -
           1.0 / (120.0 * x * x * x * x) +
           1.0 / (252.0 * std::pow(x, 6.0));
  }();
  return value;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace rpaths
