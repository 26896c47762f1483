#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rpaths/exit_laws.hpp"
#include "rpaths/rng.hpp"

namespace rpaths {

enum class SamplerKind { NaiveRejection, HTransform, FreeRun };

std::string to_string(SamplerKind k);
SamplerKind sampler_from_string(const std::string& s);

struct SimConfig {
  double epsilon = 0.1;
  double dt = 1e-3;
  long max_steps = 50'000'000;
  uint64_t seed = 1;
  int replicas = 1;
  SamplerKind sampler = SamplerKind::HTransform;
  bool bridge_correction = true;
  long max_attempts = 10'000'000;  // rejection budget per replica

  // dt = min(1e-3, eps/10), resolving both the drift and the noise scale.
  static SimConfig defaults(double eps);
  void validate() const;
};

struct SampleMeta {
  std::string potential_tag;
  double epsilon = 0.0;
  double a = 0.0;
  double b = 0.0;
  double x = 0.0;
  std::string sampler;
  uint64_t seed = 0;
};

struct EmpiricalSample {
  std::vector<double> durations;
  std::vector<long> replica_attempts;  // parallel to durations
  long n_attempts = 0;
  SampleMeta meta;
};

enum class ExitSide { Lower, Upper };

struct ExitEvent {
  double time;
  ExitSide side;
};

// One Euler-Maruyama trajectory of the plain dynamics until it leaves (a, b).
// nullopt = horizon exceeded (expected for metastable starts; callers retry
// or surface it).
std::optional<ExitEvent> sample_exit(const ExitProblem& prob,
                                     const SimConfig& cfg, RngStream& rng);

// Conditioned drift table for the h-transform sampler: cumulative
// log int_a^x e^{V/eps} precomputed on a clustered grid and interpolated in
// log(x - a).
class HTransform {
 public:
  HTransform(const Potential& p, double a, double b, double eps,
             int n_cells = 8192);
  double drift(double x) const;
  double a() const { return a_; }

 private:
  Potential pot_;
  double a_, b_, eps_, shift_;
  std::vector<double> node_;  // interior nodes, ascending
  std::vector<double> logt_;  // log(node - a)
  std::vector<double> log_cum_;
};

// Repeats sample_exit until the exit is through b; one accepted duration per
// replica. Acceptance rate estimates u_0(x).
EmpiricalSample sample_reactive_rejection(const ExitProblem& prob,
                                          const SimConfig& cfg);

// Simulates the h-transformed SDE until it reaches b; every path counts.
// dt shrinks geometrically (floor dt/2^10) on proposed crossings of a.
EmpiricalSample sample_reactive_htransform(const ExitProblem& prob,
                                           const SimConfig& cfg);

// Conditioned segment times between two interior points (the three-piece
// decomposition experiments). Sampler kind comes from cfg.
EmpiricalSample sample_segment(const ExitProblem& prob, const SimConfig& cfg,
                               double from, double to);

struct FreeRunSample {
  std::vector<double> reactive;    // T - S per transition
  std::vector<double> transition;  // full T per transition
  SampleMeta meta;
};

// Free-running trajectories from x*: full transition time T to the delta_y
// ball around y*, and the reactive remainder after the last visit to the
// delta_x ball around x*.
FreeRunSample extract_reactive_segment(const Potential& p,
                                       const SimConfig& cfg, double delta_x,
                                       double delta_y);

// Worker count for replica fan-out (REACTIVE_PATHS_THREADS caps it).
int worker_count();

// Runs f(replica_index) for i in [0, n) on the worker pool; results must be
// written to per-replica slots so the merge is scheduling-independent.
void for_each_replica(int n, const std::function<void(int)>& f);

}  // namespace rpaths
