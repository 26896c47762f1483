#include "rpaths/ams.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rpaths/errors.hpp"

namespace rpaths {

void AmsConfig::validate() const {
  if (n_replicas < 2) throw DomainError("AmsConfig: n_replicas must be >= 2");
  if (kill_count < 1 || kill_count >= n_replicas)
    throw DomainError("AmsConfig: kill_count must be in [1, n_replicas)");
  sim.validate();
}

namespace {

struct Replica {
  std::vector<double> path;  // positions at t = k dt, path[0] = x
  double level = 0.0;        // max over positions visited while alive
  bool reached_b = false;
};

// Appends Euler steps to r.path until the trajectory leaves (a, b). The final
// stored position of a path absorbed at a through the bridge test was never
// actually visited (absorption happened mid-step), so it must not enter the
// level: branching a clone there would resurrect a dead path and bias the
// splitting estimator upward.
void continue_until_exit(Replica& r, const ExitProblem& prob,
                         const SimConfig& cfg, RngStream& rng) {
  const double dt = cfg.dt;
  const double noise = std::sqrt(2.0 * prob.epsilon * dt);
  double x = r.path.back();
  for (long step = 0; step < cfg.max_steps; ++step) {
    const double xn = x - prob.potential.deriv(x) * dt + noise * rng.normal();
    r.path.push_back(xn);
    if (xn >= prob.b) {
      r.level = prob.b;
      r.reached_b = true;
      return;
    }
    if (xn <= prob.a) return;
    if (cfg.bridge_correction) {
      const double ea = -(prob.a - x) * (prob.a - xn) / (prob.epsilon * dt);
      if (ea < 0 && rng.uniform() < std::exp(ea)) return;
      const double eb = -(prob.b - x) * (prob.b - xn) / (prob.epsilon * dt);
      if (eb < 0 && rng.uniform() < std::exp(eb)) {
        r.level = prob.b;
        r.reached_b = true;
        return;
      }
    }
    r.level = std::max(r.level, xn);
    x = xn;
  }
  throw BudgetExceeded("ams: replica exceeded max_steps");
}

}  // namespace

AmsResult run_ams(const ExitProblem& prob, const AmsConfig& cfg) {
  prob.validate();
  cfg.validate();
  const int n = cfg.n_replicas;

  std::vector<Replica> reps(n);
  for (int i = 0; i < n; ++i) {
    RngStream rng(cfg.sim.seed, static_cast<uint64_t>(i));
    reps[i].path.push_back(prob.x);
    reps[i].level = prob.x;
    continue_until_exit(reps[i], prob, cfg.sim, rng);
  }

  RngStream master(cfg.sim.seed, 1'000'000'007ULL);
  double log_p = 0.0;
  long iterations = 0;

  for (;;) {
    std::vector<int> candidates;
    for (int i = 0; i < n; ++i)
      if (!reps[i].reached_b) candidates.push_back(i);
    if (candidates.empty()) break;
    if (++iterations > cfg.sim.max_attempts)
      throw BudgetExceeded("ams: iteration budget exhausted");

    // kill level L = kill_count-th smallest candidate level; every replica at
    // or below L dies in this iteration. Killing exactly kill_count would
    // bias the estimator upward: cloned replicas share path prefixes, so
    // exact level ties happen with positive probability.
    const int k = std::min<int>(cfg.kill_count, static_cast<int>(candidates.size()));
    std::nth_element(candidates.begin(), candidates.begin() + (k - 1),
                     candidates.end(), [&](int lhs, int rhs) {
                       if (reps[lhs].level != reps[rhs].level)
                         return reps[lhs].level < reps[rhs].level;
                       return lhs < rhs;
                     });
    const double L = reps[candidates[k - 1]].level;
    std::vector<int> killed;
    for (int i : candidates)
      if (reps[i].level <= L) killed.push_back(i);
    std::sort(killed.begin(), killed.end());
    std::vector<bool> is_killed(n, false);
    for (int i : killed) is_killed[i] = true;

    std::vector<int> eligible;
    for (int i = 0; i < n; ++i)
      if (!is_killed[i] && reps[i].level > L) eligible.push_back(i);
    if (eligible.empty())
      throw Extinction("ams: no survivor above the kill level");

    log_p += std::log1p(-static_cast<double>(killed.size()) / n);

    for (int dead : killed) {
      const int src = eligible[static_cast<size_t>(master.uniform() *
                                                   eligible.size())];
      const auto& sp = reps[src].path;
      // branch at the source's first alive position above L; the final node
      // is the exit step and is never a branch point
      const size_t alive = sp.size() - 1;
      size_t cut = 0;
      while (cut < alive && sp[cut] <= L) ++cut;
      Replica fresh;
      if (cut == alive) {
        // the source's level first exceeded L at its jump into b; the clone
        // inherits the finished path
        if (!reps[src].reached_b)
          throw Extinction("ams: survivor never exceeds the kill level");
        fresh = reps[src];
      } else {
        fresh.path.assign(sp.begin(), sp.begin() + cut + 1);
        fresh.level = *std::max_element(fresh.path.begin(), fresh.path.end());
        continue_until_exit(fresh, prob, cfg.sim, master);
      }
      reps[dead] = std::move(fresh);
    }
  }

  AmsResult out;
  out.probability = std::exp(log_p);
  out.iterations = iterations;
  out.sample.meta.potential_tag = prob.potential.tag();
  out.sample.meta.epsilon = prob.epsilon;
  out.sample.meta.a = prob.a;
  out.sample.meta.b = prob.b;
  out.sample.meta.x = prob.x;
  out.sample.meta.sampler = "ams";
  out.sample.meta.seed = cfg.sim.seed;
  out.sample.durations.reserve(n);
  for (const auto& r : reps)
    out.sample.durations.push_back(cfg.sim.dt *
                                   static_cast<double>(r.path.size() - 1));
  out.sample.replica_attempts.assign(n, 1);
  out.sample.n_attempts = n + iterations;
  return out;
}

}  // namespace rpaths
