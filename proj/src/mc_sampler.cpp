#include "rpaths/mc_sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rpaths/errors.hpp"
#include "rpaths/quadrature.hpp"

namespace rpaths {

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::NaiveRejection: return "rejection";
    case SamplerKind::HTransform: return "htransform";
    case SamplerKind::FreeRun: return "freerun";
  }
  return "unknown";
}

SamplerKind sampler_from_string(const std::string& s) {
  if (s == "rejection") return SamplerKind::NaiveRejection;
  if (s == "htransform") return SamplerKind::HTransform;
  if (s == "freerun") return SamplerKind::FreeRun;
  throw DomainError("unknown sampler: " + s);
}

SimConfig SimConfig::defaults(double eps) {
  SimConfig c;
  c.epsilon = eps;
  c.dt = std::min(1e-3, eps / 10.0);
  return c;
}

void SimConfig::validate() const {
  if (!(epsilon > 0)) throw DomainError("SimConfig: epsilon must be > 0");
  if (!(dt > 0)) throw DomainError("SimConfig: dt must be > 0");
  if (dt > epsilon) throw DomainError("SimConfig: dt must not exceed epsilon");
  if (replicas < 1) throw DomainError("SimConfig: replicas must be >= 1");
  if (max_steps < 1) throw DomainError("SimConfig: max_steps must be >= 1");
}

namespace {

// P(bridge between interior points x0, x1 touches level c) for the sqrt(2 eps)
// diffusion over one step.
double bridge_cross_prob(double x0, double x1, double c, double eps,
                         double dt) {
  const double e = -(c - x0) * (c - x1) / (eps * dt);
  return e >= 0 ? 1.0 : std::exp(e);
}

}  // namespace

std::optional<ExitEvent> sample_exit(const ExitProblem& prob,
                                     const SimConfig& cfg, RngStream& rng) {
  prob.validate();
  cfg.validate();
  const Potential& p = prob.potential;
  const double dt = cfg.dt;
  const double noise = std::sqrt(2.0 * cfg.epsilon * dt);
  double x = prob.x;
  double t = 0.0;
  for (long step = 0; step < cfg.max_steps; ++step) {
    const double xn = x - p.deriv(x) * dt + noise * rng.normal();
    t += dt;
    if (xn <= prob.a) return ExitEvent{t, ExitSide::Lower};
    if (xn >= prob.b) return ExitEvent{t, ExitSide::Upper};
    if (cfg.bridge_correction) {
      const double pl = bridge_cross_prob(x, xn, prob.a, cfg.epsilon, dt);
      if (pl > 1e-16 && rng.uniform() < pl) return ExitEvent{t, ExitSide::Lower};
      const double pu = bridge_cross_prob(x, xn, prob.b, cfg.epsilon, dt);
      if (pu > 1e-16 && rng.uniform() < pu) return ExitEvent{t, ExitSide::Upper};
    }
    x = xn;
  }
  return std::nullopt;
}

HTransform::HTransform(const Potential& p, double a, double b, double eps,
                       int n_cells)
    : pot_(p), a_(a), b_(b), eps_(eps) {
  if (!(b > a) || eps <= 0 || n_cells < 16)
    throw DomainError("HTransform: bad geometry");
  shift_ = std::max(p.value(a), p.value(b));
  if (a < 0 && b > 0) shift_ = std::max(shift_, p.value(0.0));

  // Nodes log-spaced in (x - a): the drift singularity at a needs resolution
  // down to (b-a) * 2^-44.
  const double t_lo = std::log(b - a) - 44.0 * std::log(2.0);
  const double t_hi = std::log(b - a);
  node_.resize(n_cells);
  logt_.resize(n_cells);
  for (int i = 0; i < n_cells; ++i) {
    logt_[i] = t_lo + (t_hi - t_lo) * i / (n_cells - 1);
    node_[i] = a + std::exp(logt_[i]);
  }
  node_.back() = b;

  // Accumulated in log domain: each cell integral carries its own shift, so
  // deep potential drops near a (e^{V/eps} far below double range) stay exact.
  log_cum_.resize(n_cells);
  // first sliver [a, node_0] is flat on this scale
  log_cum_[0] = (pot_.value(node_[0]) - shift_) / eps_ + std::log(node_[0] - a);
  for (int i = 1; i < n_cells; ++i) {
    const double local =
        std::max(pot_.value(node_[i - 1]), pot_.value(node_[i]));
    auto f = [&](double s) { return std::exp((pot_.value(s) - local) / eps_); };
    const double seg = gauss_kronrod_15(f, node_[i - 1], node_[i], nullptr);
    if (!(seg > 0) || !std::isfinite(seg))
      throw IllConditioned("HTransform: cumulative integral degenerate");
    const double log_seg = std::log(seg) + (local - shift_) / eps_;
    const double hi = std::max(log_cum_[i - 1], log_seg);
    log_cum_[i] =
        hi + std::log(std::exp(log_cum_[i - 1] - hi) + std::exp(log_seg - hi));
  }
}

double HTransform::drift(double x) const {
  if (!(x > a_)) throw DomainError("HTransform::drift: x must be > a");
  const double t = std::log(x - a_);
  double logI;
  if (t <= logt_.front()) {
    // below the grid the integrand is constant: I scales linearly in (x - a)
    logI = log_cum_.front() + (t - logt_.front());
  } else if (t >= logt_.back()) {
    logI = log_cum_.back();
  } else {
    const auto it = std::upper_bound(logt_.begin(), logt_.end(), t);
    const size_t j = static_cast<size_t>(it - logt_.begin());
    const double w = (t - logt_[j - 1]) / (logt_[j] - logt_[j - 1]);
    logI = (1.0 - w) * log_cum_[j - 1] + w * log_cum_[j];
  }
  return -pot_.deriv(x) +
         2.0 * eps_ * std::exp((pot_.value(x) - shift_) / eps_ - logI);
}

namespace {

SampleMeta make_meta(const ExitProblem& prob, const SimConfig& cfg,
                     SamplerKind kind) {
  SampleMeta m;
  m.potential_tag = prob.potential.tag();
  m.epsilon = prob.epsilon;
  m.a = prob.a;
  m.b = prob.b;
  m.x = prob.x;
  m.sampler = to_string(kind);
  m.seed = cfg.seed;
  return m;
}

// One h-transformed trajectory from `start` until it reaches `stop`.
// Proposed crossings of a shrink the local step (floor dt / 2^10).
double htransform_passage(const HTransform& ht, const ExitProblem& prob,
                          const SimConfig& cfg, double start, double stop,
                          RngStream& rng) {
  const double dt_base = cfg.dt;
  const double dt_floor = dt_base / 1024.0;
  double x = start;
  double t = 0.0;
  for (long step = 0; step < cfg.max_steps; ++step) {
    double dt = dt_base;
    double xn;
    for (;;) {
      xn = x + ht.drift(x) * dt + std::sqrt(2.0 * prob.epsilon * dt) * rng.normal();
      if (xn > prob.a) break;
      dt *= 0.5;
      if (dt < dt_floor)
        throw StiffnessFloor("htransform sampler: step floor hit near a");
    }
    t += dt;
    if (xn >= stop) return t;
    x = xn;
  }
  throw BudgetExceeded("htransform sampler: max_steps exceeded");
}

}  // namespace

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("REACTIVE_PATHS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

void for_each_replica(int n, const std::function<void(int)>& f) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

EmpiricalSample sample_reactive_rejection(const ExitProblem& prob,
                                          const SimConfig& cfg) {
  prob.validate();
  cfg.validate();
  EmpiricalSample out;
  out.meta = make_meta(prob, cfg, SamplerKind::NaiveRejection);
  out.durations.resize(cfg.replicas);
  out.replica_attempts.assign(cfg.replicas, 0);
  for_each_replica(cfg.replicas, [&](int i) {
    RngStream rng(cfg.seed, static_cast<uint64_t>(i));
    for (long k = 0; k < cfg.max_attempts; ++k) {
      ++out.replica_attempts[i];
      const auto ev = sample_exit(prob, cfg, rng);
      if (ev && ev->side == ExitSide::Upper) {
        out.durations[i] = ev->time;
        return;
      }
    }
    throw BudgetExceeded("rejection sampler: attempt budget exhausted");
  });
  for (long a : out.replica_attempts) out.n_attempts += a;
  return out;
}

EmpiricalSample sample_reactive_htransform(const ExitProblem& prob,
                                           const SimConfig& cfg) {
  prob.validate();
  cfg.validate();
  const HTransform ht(prob.potential, prob.a, prob.b, prob.epsilon);
  EmpiricalSample out;
  out.meta = make_meta(prob, cfg, SamplerKind::HTransform);
  out.durations.resize(cfg.replicas);
  out.replica_attempts.assign(cfg.replicas, 1);
  for_each_replica(cfg.replicas, [&](int i) {
    RngStream rng(cfg.seed, static_cast<uint64_t>(i));
    out.durations[i] = htransform_passage(ht, prob, cfg, prob.x, prob.b, rng);
  });
  out.n_attempts = cfg.replicas;
  return out;
}

EmpiricalSample sample_segment(const ExitProblem& prob, const SimConfig& cfg,
                               double from, double to) {
  prob.validate();
  cfg.validate();
  if (!(prob.a < from && from < to && to <= prob.b))
    throw DomainError("sample_segment: need a < from < to <= b");
  EmpiricalSample out;
  out.meta = make_meta(prob, cfg, cfg.sampler);
  out.durations.resize(cfg.replicas);
  out.replica_attempts.assign(cfg.replicas, 0);
  auto& attempts = out.replica_attempts;

  if (cfg.sampler == SamplerKind::HTransform) {
    const HTransform ht(prob.potential, prob.a, prob.b, prob.epsilon);
    for_each_replica(cfg.replicas, [&](int i) {
      RngStream rng(cfg.seed, static_cast<uint64_t>(i));
      out.durations[i] = htransform_passage(ht, prob, cfg, from, to, rng);
      attempts[i] = 1;
    });
  } else {
    // plain dynamics from `from`, accepted when the exit is through b; the
    // recorded value is the first-passage time of `to`
    for_each_replica(cfg.replicas, [&](int i) {
      RngStream rng(cfg.seed, static_cast<uint64_t>(i));
      const double noise = std::sqrt(2.0 * prob.epsilon * cfg.dt);
      for (long k = 0; k < cfg.max_attempts; ++k) {
        ++attempts[i];
        double x = from;
        double t = 0.0;
        double hit_to = -1.0;
        bool resolved = false;
        for (long step = 0; step < cfg.max_steps; ++step) {
          const double xn =
              x - prob.potential.deriv(x) * cfg.dt + noise * rng.normal();
          t += cfg.dt;
          if (hit_to < 0 && xn >= to) hit_to = t;
          if (xn <= prob.a) { resolved = true; break; }
          if (xn >= prob.b) {
            out.durations[i] = hit_to;
            return;
          }
          x = xn;
        }
        if (!resolved)
          throw BudgetExceeded("sample_segment: max_steps exceeded");
      }
      throw BudgetExceeded("sample_segment: attempt budget exhausted");
    });
  }
  out.n_attempts = 0;
  for (long a : attempts) out.n_attempts += a;
  return out;
}

FreeRunSample extract_reactive_segment(const Potential& p,
                                       const SimConfig& cfg, double delta_x,
                                       double delta_y) {
  cfg.validate();
  if (!(delta_x > 0 && delta_y > 0))
    throw DomainError("extract_reactive_segment: deltas must be > 0");
  const auto xw = p.left_well();
  const auto yw = p.right_well();
  if (!xw || !yw)
    throw DomainError("extract_reactive_segment: potential has no wells");
  const double xs = *xw, ys = *yw;

  FreeRunSample out;
  out.meta.potential_tag = p.tag();
  out.meta.epsilon = cfg.epsilon;
  out.meta.a = xs;
  out.meta.b = ys;
  out.meta.x = xs;
  out.meta.sampler = to_string(SamplerKind::FreeRun);
  out.meta.seed = cfg.seed;
  out.reactive.resize(cfg.replicas);
  out.transition.resize(cfg.replicas);

  for_each_replica(cfg.replicas, [&](int i) {
    RngStream rng(cfg.seed, static_cast<uint64_t>(i));
    const double noise = std::sqrt(2.0 * cfg.epsilon * cfg.dt);
    double x = xs;
    double t = 0.0;
    double last_left = 0.0;  // last time in the delta_x ball around x*
    for (long step = 0; step < cfg.max_steps; ++step) {
      const double xn = x - p.deriv(x) * cfg.dt + noise * rng.normal();
      t += cfg.dt;
      if (std::abs(xn - xs) <= delta_x) last_left = t;
      if (std::abs(xn - ys) <= delta_y) {
        out.transition[i] = t;
        out.reactive[i] = t - last_left;
        return;
      }
      x = xn;
    }
    throw BudgetExceeded("free run: max_steps exceeded before transition");
  });
  return out;
}

}  // namespace rpaths
