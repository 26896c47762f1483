#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rpaths/errors.hpp"
#include "rpaths/rng.hpp"
#include "rpaths/special_laws.hpp"
#include "rpaths/stats.hpp"

using namespace rpaths;

namespace {

std::vector<double> normal_sample(int n, uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("euler_gamma matches the reference constant") {
  CHECK(euler_gamma() == doctest::Approx(0.57721566490153286).epsilon(1e-12));
}

TEST_CASE("normal_cdf reference points") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963985) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_cdf(-8.0) < 1e-14);
}

TEST_CASE("ks_distance is scale-free under monotone transforms") {
  const auto raw = normal_sample(2000, 5);
  const auto e1 = EmpiricalDistribution::from(raw);
  std::vector<double> warped = raw;
  for (double& x : warped) x = std::exp(x);
  const auto e2 = EmpiricalDistribution::from(warped);
  const double d1 = ks_distance(e1, [](double t) { return normal_cdf(t); });
  const double d2 =
      ks_distance(e2, [](double t) { return normal_cdf(std::log(t)); });
  CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
}

TEST_CASE("two-sample KS of a sample against itself is zero") {
  const auto e = EmpiricalDistribution::from(normal_sample(500, 8));
  CHECK(ks_distance_two_sample(e, e) == doctest::Approx(0.0));
}

TEST_CASE("histogram mass is one and the point mass stays in one bin") {
  const auto e = EmpiricalDistribution::from(normal_sample(10000, 3));
  const auto bins = histogram_density(e, 40);
  REQUIRE(bins.size() == 40);
  const double width = bins[1].center - bins[0].center;
  double mass = 0.0;
  for (const auto& b : bins) mass += b.density * width;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

  const auto point = EmpiricalDistribution::from({2.0, 2.0, 2.0, 2.0});
  int nonzero = 0;
  for (const auto& b : histogram_density(point, 10))
    if (b.density > 0) ++nonzero;
  CHECK(nonzero == 1);
}

TEST_CASE("extreme-value histogram peaks near 1/e") {
  GumbelLaw g;
  RngStream rng(11);
  std::vector<double> v(100000);
  for (double& x : v) x = g.sample(rng);
  double peak = 0.0;
  for (const auto& b :
       histogram_density(EmpiricalDistribution::from(std::move(v)), 100))
    peak = std::max(peak, b.density);
  CHECK(peak == doctest::Approx(std::exp(-1.0)).epsilon(0.10));
}

TEST_CASE("bootstrap interval is deterministic and has CLT-scale width") {
  const auto e = EmpiricalDistribution::from(normal_sample(10000, 7));
  RngStream r1(9), r2(9);
  const auto ci1 = bootstrap_mean_ci(e, 0.95, 500, r1);
  const auto ci2 = bootstrap_mean_ci(e, 0.95, 500, r2);
  CHECK(ci1.first == ci2.first);
  CHECK(ci1.second == ci2.second);
  const double width = ci1.second - ci1.first;
  CHECK(width == doctest::Approx(2.0 * 1.96 / 100.0).epsilon(0.20));

  const auto flat = EmpiricalDistribution::from(
      std::vector<double>(50, 3.25));
  RngStream r3(1);
  const auto ci = bootstrap_mean_ci(flat, 0.95, 200, r3);
  CHECK(ci.first == ci.second);
}

TEST_CASE("bootstrap rejects tiny samples") {
  const auto e = EmpiricalDistribution::from({1.0, 2.0, 3.0});
  RngStream rng(1);
  CHECK_THROWS_AS(bootstrap_mean_ci(e, 0.95, 100, rng), TooFewSamples);
}

TEST_CASE("bootstrap coverage on synthetic repetitions") {
  int covered = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto e = EmpiricalDistribution::from(normal_sample(400, 1000 + r));
    RngStream rng(2000 + r);
    const auto [lo, hi] = bootstrap_mean_ci(e, 0.95, 300, rng);
    if (lo <= 0.0 && 0.0 <= hi) ++covered;
  }
  CHECK(covered >= 180);  // nominal 190 of 200
}

TEST_CASE("mean and variance basics") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == doctest::Approx(2.5));
  CHECK(variance(v) == doctest::Approx(5.0 / 3.0));
}
