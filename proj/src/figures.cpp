#include "rpaths/figures.hpp"

#include <charconv>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "rpaths/limit_laws.hpp"
#include "rpaths/special_laws.hpp"
#include "rpaths/stats.hpp"

namespace rpaths {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string sample_csv(const EmpiricalSample& sample) {
  std::string out = "duration,attempts,replica,seed\r\n";
  for (size_t i = 0; i < sample.durations.size(); ++i) {
    const long at = i < sample.replica_attempts.size()
                        ? sample.replica_attempts[i]
                        : 1;
    out += format_double(sample.durations[i]);
    out += ',';
    out += std::to_string(at);
    out += ',';
    out += std::to_string(i);
    out += ',';
    out += std::to_string(sample.meta.seed);
    out += "\r\n";
  }
  return out;
}

namespace {

ordered_json meta_json(const SampleMeta& m) {
  return ordered_json{{"potential", m.potential_tag}, {"epsilon", m.epsilon},
                      {"a", m.a},                     {"b", m.b},
                      {"x", m.x},                     {"sampler", m.sampler},
                      {"seed", m.seed}};
}

ordered_json sim_json(const SimConfig& c) {
  return ordered_json{{"epsilon", c.epsilon},
                      {"dt", c.dt},
                      {"max_steps", c.max_steps},
                      {"seed", c.seed},
                      {"replicas", c.replicas},
                      {"sampler", to_string(c.sampler)},
                      {"bridge_correction", c.bridge_correction},
                      {"max_attempts", c.max_attempts}};
}

}  // namespace

std::string sample_sidecar(const EmpiricalSample& sample,
                           const SimConfig& cfg) {
  ordered_json j{{"meta", meta_json(sample.meta)},
                 {"config", sim_json(cfg)},
                 {"n_samples", sample.durations.size()},
                 {"n_attempts", sample.n_attempts}};
  return j.dump(2) + "\n";
}

std::string ams_sidecar(const AmsResult& result, const AmsConfig& cfg) {
  ordered_json j{{"meta", meta_json(result.sample.meta)},
                 {"config", sim_json(cfg.sim)},
                 {"n_replicas", cfg.n_replicas},
                 {"kill_count", cfg.kill_count},
                 {"n_samples", result.sample.durations.size()},
                 {"probability_estimate", result.probability},
                 {"iterations", result.iterations}};
  return j.dump(2) + "\n";
}

namespace {

struct Budget {
  std::chrono::steady_clock::time_point start;
  double seconds;
  bool exhausted() const {
    if (seconds <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
               .count() > seconds;
  }
};

void append_row(std::string& csv, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) csv += ',';
    csv += csv_field(f);
    first = false;
  }
  csv += "\r\n";
}

ordered_json figure_config_json(const std::string& figure,
                                const FigureConfig& cfg,
                                const std::string& tag,
                                const std::vector<double>& eps, int replicas) {
  return ordered_json{{"figure", figure},
                      {"potential", tag},
                      {"a", cfg.a},
                      {"b", cfg.b},
                      {"x", cfg.x},
                      {"epsilons", eps},
                      {"replicas", replicas},
                      {"seed", cfg.seed},
                      {"budget_seconds", cfg.budget_seconds}};
}

FigureOutput mean_vs_epsilon_figure(const std::string& figure,
                                    const FigureConfig& cfg,
                                    const std::string& default_tag,
                                    const std::vector<double>& default_eps) {
  const std::string tag =
      cfg.potential_tag.empty() ? default_tag : cfg.potential_tag;
  const Potential p = Potential::parse(tag);
  const std::vector<double> eps =
      cfg.epsilons.empty() ? default_eps : cfg.epsilons;
  const int replicas = cfg.replicas > 0 ? cfg.replicas : 1000;

  FigureOutput out;
  out.csv = "log_epsilon,mean,ci_low,ci_high,theory\r\n";
  Budget budget{std::chrono::steady_clock::now(), cfg.budget_seconds};

  for (size_t k = 0; k < eps.size(); ++k) {
    if (budget.exhausted()) {
      out.truncated = true;
      append_row(out.csv, {"truncated", "", "", "", ""});
      break;
    }
    const double e = eps[k];
    ExitProblem prob{p, cfg.a, cfg.b, cfg.x, e};
    AmsConfig ac;
    ac.n_replicas = replicas;
    ac.sim = SimConfig::defaults(e);
    ac.sim.seed = cfg.seed + k;
    const AmsResult res = run_ams(prob, ac);
    const auto dist = EmpiricalDistribution::from(res.sample.durations);
    RngStream boot_rng(cfg.seed, 1000 + k);
    const auto [lo, hi] = bootstrap_mean_ci(dist, 0.95, 1000, boot_rng);
    const double theory =
        figure == "fig2"
            ? quadratic_barrier_limit_law(p.param(), cfg.x, cfg.b, e).mean()
            : double_well_limit_law(p, cfg.x, cfg.b, e).mean();
    append_row(out.csv,
               {format_double(std::log(e)),
                format_double(mean(res.sample.durations)), format_double(lo),
                format_double(hi), format_double(theory)});
  }

  ordered_json side = figure_config_json(figure, cfg, tag, eps, replicas);
  side["truncated"] = out.truncated;
  out.sidecar = side.dump(2) + "\n";
  return out;
}

}  // namespace

FigureOutput figure_fig1(const FigureConfig& cfg) {
  const std::string tag =
      cfg.potential_tag.empty() ? "quartic" : cfg.potential_tag;
  const Potential p = Potential::parse(tag);
  const std::vector<double> eps = cfg.epsilons.empty()
                                      ? std::vector<double>{1.0,  0.5,  0.2,
                                                            0.1,  0.05, 0.02,
                                                            0.01}
                                      : cfg.epsilons;
  const int replicas = cfg.replicas > 0 ? cfg.replicas : 10000;

  FigureOutput out;
  out.csv = "series,epsilon,x,y\r\n";
  Budget budget{std::chrono::steady_clock::now(), cfg.budget_seconds};

  for (size_t k = 0; k < eps.size(); ++k) {
    if (budget.exhausted()) {
      out.truncated = true;
      append_row(out.csv, {"truncated", format_double(eps[k]), "", ""});
      break;
    }
    const double e = eps[k];
    ExitProblem prob{p, cfg.a, cfg.b, cfg.x, e};
    SimConfig sim = SimConfig::defaults(e);
    sim.replicas = replicas;
    sim.seed = cfg.seed + k;
    const EmpiricalSample sample = sample_reactive_htransform(prob, sim);

    const auto dist = EmpiricalDistribution::from(sample.durations);
    for (const auto& bin : histogram_density(dist, 100))
      append_row(out.csv, {"density", format_double(e),
                           format_double(bin.center),
                           format_double(bin.density)});

    const double m = mean(sample.durations);
    std::vector<double> centered = sample.durations;
    for (double& d : centered) d -= m;
    for (const auto& bin :
         histogram_density(EmpiricalDistribution::from(std::move(centered)),
                           100))
      append_row(out.csv, {"centered", format_double(e),
                           format_double(bin.center),
                           format_double(bin.density)});

    const LimitLaw law = double_well_limit_law(p, cfg.x, cfg.b, e);
    const GumbelLaw g{law.location, law.scale};
    const double qlo = g.quantile(1e-3), qhi = g.quantile(1.0 - 1e-3);
    for (int i = 0; i <= 200; ++i) {
      const double t = qlo + (qhi - qlo) * i / 200.0;
      append_row(out.csv, {"gumbel", format_double(e), format_double(t),
                           format_double(g.density(t))});
    }
  }

  ordered_json side = figure_config_json("fig1", cfg, tag, eps, replicas);
  side["truncated"] = out.truncated;
  out.sidecar = side.dump(2) + "\n";
  return out;
}

FigureOutput figure_fig2(const FigureConfig& cfg) {
  return mean_vs_epsilon_figure(
      "fig2", cfg, "quadratic:1",
      {1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01});
}

FigureOutput figure_fig3(const FigureConfig& cfg) {
  return mean_vs_epsilon_figure(
      "fig3", cfg, "quartic",
      {1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.007});
}

}  // namespace rpaths
