#pragma once

#include "rpaths/mc_sampler.hpp"

namespace rpaths {

struct AmsConfig {
  int n_replicas = 100;
  int kill_count = 1;
  SimConfig sim;

  void validate() const;
};

struct AmsResult {
  double probability;  // estimate of P_x(T_b < T_a)
  EmpiricalSample sample;  // accepted reactive durations, one per replica
  long iterations;
};

// Adaptive multilevel splitting for the exit-through-b event. The level of a
// path is its running maximum; each iteration kills the kill_count
// lowest-level replicas (ties broken towards the lowest index), rebranches
// each from a uniformly drawn strictly-higher survivor at its first strict
// exceedance of the killed level, and multiplies the estimator by
// (1 - killed/n). Terminates when every replica exits through b.
AmsResult run_ams(const ExitProblem& prob, const AmsConfig& cfg);

}  // namespace rpaths
