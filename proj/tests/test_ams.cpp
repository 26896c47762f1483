#include <doctest.h>

#include <cmath>

#include "rpaths/ams.hpp"
#include "rpaths/errors.hpp"
#include "rpaths/stats.hpp"

using namespace rpaths;

TEST_CASE("splitting config validation") {
  AmsConfig cfg;
  cfg.sim = SimConfig::defaults(0.2);
  cfg.n_replicas = 1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.n_replicas = 10;
  cfg.kill_count = 10;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.kill_count = 3;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("splitting runs are deterministic under a fixed seed") {
  const ExitProblem prob{Potential::quartic_double_well(), -0.9, 0.9, -0.89,
                         0.25};
  AmsConfig cfg;
  cfg.n_replicas = 100;
  cfg.sim = SimConfig::defaults(0.25);
  cfg.sim.seed = 12;
  const AmsResult r1 = run_ams(prob, cfg);
  const AmsResult r2 = run_ams(prob, cfg);
  CHECK(r1.probability == r2.probability);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.sample.durations == r2.sample.durations);
}

TEST_CASE("splitting estimate brackets the committor") {
  const ExitProblem prob{Potential::quartic_double_well(), -0.9, 0.9, -0.89,
                         0.2};
  const double exact = exit_probability(prob);
  std::vector<double> est;
  for (int r = 0; r < 10; ++r) {
    AmsConfig cfg;
    cfg.n_replicas = 200;
    cfg.sim = SimConfig::defaults(0.2);
    cfg.sim.seed = 40 + r;
    est.push_back(run_ams(prob, cfg).probability);
  }
  // modest tolerance: 10 runs of 200 replicas, plus O(dt) crossing bias
  CHECK(mean(est) / exact == doctest::Approx(1.0).epsilon(0.30));
}

TEST_CASE("every replica ends with a completed reactive duration") {
  const ExitProblem prob{Potential::quartic_double_well(), -0.9, 0.9, -0.89,
                         0.3};
  AmsConfig cfg;
  cfg.n_replicas = 64;
  cfg.sim = SimConfig::defaults(0.3);
  cfg.sim.seed = 77;
  const AmsResult res = run_ams(prob, cfg);
  REQUIRE(res.sample.durations.size() == 64);
  for (double d : res.sample.durations) CHECK(d > 0.0);
  CHECK(res.probability > 0.0);
  CHECK(res.probability < 1.0);
  CHECK(res.sample.meta.sampler == "ams");
  CHECK(res.iterations > 0);
}

TEST_CASE("probability estimate shrinks with the temperature") {
  const Potential q = Potential::quartic_double_well();
  AmsConfig cfg;
  cfg.n_replicas = 150;
  double prev = 1.0;
  for (double eps : {0.4, 0.2, 0.1}) {
    cfg.sim = SimConfig::defaults(eps);
    cfg.sim.seed = 55;
    const ExitProblem prob{q, -0.9, 0.9, -0.89, eps};
    const double p = run_ams(prob, cfg).probability;
    CHECK(p < prev);
    prev = p;
  }
}
