#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "rpaths/errors.hpp"
#include "rpaths/exit_laws.hpp"
#include "rpaths/mc_sampler.hpp"
#include "rpaths/stats.hpp"

using namespace rpaths;

TEST_CASE("config defaults resolve the temperature scale") {
  CHECK(SimConfig::defaults(0.5).dt == doctest::Approx(1e-3));
  CHECK(SimConfig::defaults(0.004).dt == doctest::Approx(4e-4));
  SimConfig bad = SimConfig::defaults(0.1);
  bad.dt = 0.2;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("sampler kind names round-trip") {
  for (auto k : {SamplerKind::NaiveRejection, SamplerKind::HTransform,
                 SamplerKind::FreeRun})
    CHECK(sampler_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(sampler_from_string("metropolis"), DomainError);
}

TEST_CASE("plain exits from a flat landscape follow the linear committor") {
  const Potential fl = Potential::flat(1.0);
  const ExitProblem prob{fl, -1.0, 1.0, -0.5, 0.5};
  SimConfig cfg = SimConfig::defaults(0.5);
  RngStream rng(33);
  int upper = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const auto ev = sample_exit(prob, cfg, rng);
    REQUIRE(ev.has_value());
    if (ev->side == ExitSide::Upper) ++upper;
  }
  CHECK(static_cast<double>(upper) / n == doctest::Approx(0.25).epsilon(0.10));
}

TEST_CASE("rejection sampling is deterministic and tracks acceptance") {
  const Potential q = Potential::quartic_double_well();
  const ExitProblem prob{q, -0.9, 0.9, -0.89, 0.3};
  SimConfig cfg = SimConfig::defaults(0.3);
  cfg.replicas = 200;
  cfg.seed = 6;
  const auto s1 = sample_reactive_rejection(prob, cfg);
  const auto s2 = sample_reactive_rejection(prob, cfg);
  CHECK(s1.durations == s2.durations);
  CHECK(s1.replica_attempts == s2.replica_attempts);
  REQUIRE(s1.durations.size() == 200);
  REQUIRE(s1.replica_attempts.size() == 200);
  long total = 0;
  for (long a : s1.replica_attempts) total += a;
  CHECK(total == s1.n_attempts);
  CHECK(s1.meta.sampler == to_string(SamplerKind::NaiveRejection));
  // acceptance rate estimates the committor
  const double rate = 200.0 / static_cast<double>(s1.n_attempts);
  CHECK(rate == doctest::Approx(exit_probability(prob)).epsilon(0.35));
}

TEST_CASE("conditioned sampler agrees with rejection in distribution") {
  const Potential q = Potential::quartic_double_well();
  const ExitProblem prob{q, -0.9, 0.9, -0.89, 0.2};
  SimConfig cfg = SimConfig::defaults(0.2);
  cfg.replicas = 3000;
  cfg.seed = 14;
  const auto rej = sample_reactive_rejection(prob, cfg);
  cfg.seed = 15;
  const auto ht = sample_reactive_htransform(prob, cfg);
  CHECK(mean(ht.durations) ==
        doctest::Approx(mean(rej.durations)).epsilon(0.08));
  const double ks =
      ks_distance_two_sample(EmpiricalDistribution::from(rej.durations),
                             EmpiricalDistribution::from(ht.durations));
  CHECK(ks < 0.06);
}

TEST_CASE("conditioned segment durations add up along a split point") {
  const Potential q = Potential::quartic_double_well();
  const ExitProblem prob{q, -0.9, 0.9, -0.89, 0.3};
  SimConfig cfg = SimConfig::defaults(0.3);
  cfg.replicas = 2000;
  cfg.seed = 25;
  const auto whole = sample_reactive_htransform(prob, cfg);
  const auto first = sample_segment(prob, cfg, -0.89, 0.0);
  cfg.seed = 26;
  const auto second = sample_segment(prob, cfg, 0.0, 0.9);
  CHECK(mean(first.durations) + mean(second.durations) ==
        doctest::Approx(mean(whole.durations)).epsilon(0.10));
}

TEST_CASE("free runs split the transition into wait and reactive parts") {
  const Potential q = Potential::quartic_double_well();
  SimConfig cfg = SimConfig::defaults(0.15);
  cfg.replicas = 20;
  cfg.seed = 8;
  cfg.max_steps = 200'000'000;
  const auto fr = extract_reactive_segment(q, cfg, 0.1, 0.1);
  REQUIRE(fr.reactive.size() == 20);
  REQUIRE(fr.transition.size() == 20);
  for (size_t i = 0; i < fr.reactive.size(); ++i) {
    CHECK(fr.reactive[i] > 0.0);
    CHECK(fr.reactive[i] <= fr.transition[i]);
  }
  // reactive part is orders of magnitude shorter than the full transition
  CHECK(mean(fr.reactive) < 0.2 * mean(fr.transition));
}

TEST_CASE("worker pool respects the thread cap and covers every index") {
  setenv("REACTIVE_PATHS_THREADS", "2", 1);
  CHECK(worker_count() <= 2);
  std::vector<std::atomic<int>> hits(97);
  for (auto& h : hits) h = 0;
  for_each_replica(97, [&](int i) { hits[i]++; });
  for (auto& h : hits) CHECK(h == 1);
  unsetenv("REACTIVE_PATHS_THREADS");
}

TEST_CASE("worker pool propagates exceptions") {
  CHECK_THROWS_AS(for_each_replica(
                      8,
                      [](int i) {
                        if (i == 5) throw DomainError("boom");
                      }),
                  DomainError);
}
