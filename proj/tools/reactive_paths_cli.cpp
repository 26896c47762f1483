// Command-line front end: sampling runs, splitting runs, solver and
// closed-form evaluations, the acceptance battery, and figure data.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpaths/ams.hpp"
#include "rpaths/errors.hpp"
#include "rpaths/exit_laws.hpp"
#include "rpaths/figures.hpp"
#include "rpaths/limit_laws.hpp"
#include "rpaths/mc_sampler.hpp"
#include "rpaths/special_laws.hpp"
#include "rpaths/stats.hpp"
#include "rpaths/verify.hpp"

using nlohmann::json;
using nlohmann::ordered_json;
using namespace rpaths;

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
}

void emit(const std::string& out_path, const std::string& body,
          const std::string& sidecar = "") {
  if (out_path.empty()) {
    std::fputs(body.c_str(), stdout);
    return;
  }
  write_file(out_path, body);
  if (!sidecar.empty()) write_file(out_path + ".json", sidecar);
}

// Config-file override: flags beat the file, the file beats defaults.
class ConfigSource {
 public:
  void load(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config: " + path);
    in >> doc_;
  }

  template <class T>
  void fill(const CLI::Option* opt, const char* key, T& var) const {
    if (opt->count() == 0 && doc_.contains(key)) var = doc_.at(key).get<T>();
  }

 private:
  json doc_;
};

struct ProblemOpts {
  std::string potential = "quartic";
  double a = -0.9;
  double b = 0.9;
  double x = -0.89;
  double epsilon = 0.1;

  CLI::Option *o_pot, *o_a, *o_b, *o_x, *o_eps;

  void attach(CLI::App* cmd) {
    o_pot = cmd->add_option("--potential", potential, "potential tag");
    o_a = cmd->add_option("--a", a, "lower boundary");
    o_b = cmd->add_option("--b", b, "upper boundary");
    o_x = cmd->add_option("--x", x, "start point");
    o_eps = cmd->add_option("--epsilon", epsilon, "temperature");
  }
  void fill(const ConfigSource& c) {
    c.fill(o_pot, "potential", potential);
    c.fill(o_a, "a", a);
    c.fill(o_b, "b", b);
    c.fill(o_x, "x", x);
    c.fill(o_eps, "epsilon", epsilon);
  }
  ExitProblem problem() const {
    return ExitProblem{Potential::parse(potential), a, b, x, epsilon};
  }
};

struct SimOpts {
  double dt = 0.0;  // 0 = derived from epsilon
  long max_steps = 0;
  uint64_t seed = 1;
  int replicas = 1000;
  bool no_bridge = false;

  CLI::Option *o_dt, *o_steps, *o_seed, *o_rep, *o_nb;

  void attach(CLI::App* cmd) {
    o_dt = cmd->add_option("--dt", dt, "time step (default min(1e-3, eps/10))");
    o_steps = cmd->add_option("--max-steps", max_steps, "per-path step budget");
    o_seed = cmd->add_option("--seed", seed, "rng seed");
    o_rep = cmd->add_option("--replicas", replicas, "sample size");
    o_nb = cmd->add_flag("--no-bridge", no_bridge,
                         "disable the bridge crossing test");
  }
  void fill(const ConfigSource& c) {
    c.fill(o_dt, "dt", dt);
    c.fill(o_steps, "max_steps", max_steps);
    c.fill(o_seed, "seed", seed);
    c.fill(o_rep, "replicas", replicas);
    c.fill(o_nb, "no_bridge", no_bridge);
  }
  SimConfig config(double epsilon) const {
    SimConfig cfg = SimConfig::defaults(epsilon);
    if (dt > 0) cfg.dt = dt;
    if (max_steps > 0) cfg.max_steps = max_steps;
    cfg.seed = seed;
    cfg.replicas = replicas;
    cfg.bridge_correction = !no_bridge;
    return cfg;
  }
};

ordered_json law_json(const LimitLaw& law) {
  ordered_json j{{"kind", to_string(law.kind)},
                 {"location", law.location},
                 {"scale", law.scale},
                 {"epsilon_power", law.epsilon_power},
                 {"params", law.params}};
  try {
    j["mean"] = law.mean();
  } catch (const DomainError&) {
    j["mean"] = nullptr;
  }
  return j;
}

int run_simulate(const ProblemOpts& po, const SimOpts& so,
                 const std::string& sampler, double delta_x, double delta_y,
                 const std::string& out) {
  if (sampler == "freerun") {
    const Potential p = Potential::parse(po.potential);
    SimConfig cfg = so.config(po.epsilon);
    const FreeRunSample fr = extract_reactive_segment(p, cfg, delta_x, delta_y);
    std::string csv = "reactive,transition,replica,seed\r\n";
    for (size_t i = 0; i < fr.reactive.size(); ++i) {
      csv += format_double(fr.reactive[i]) + "," +
             format_double(fr.transition[i]) + "," + std::to_string(i) + "," +
             std::to_string(cfg.seed) + "\r\n";
    }
    ordered_json side{{"meta",
                       {{"potential", fr.meta.potential_tag},
                        {"epsilon", fr.meta.epsilon},
                        {"sampler", "freerun"},
                        {"delta_x", delta_x},
                        {"delta_y", delta_y},
                        {"seed", cfg.seed}}},
                      {"n_samples", fr.reactive.size()}};
    emit(out, csv, side.dump(2) + "\n");
    return 0;
  }

  const ExitProblem prob = po.problem();
  SimConfig cfg = so.config(po.epsilon);
  cfg.sampler = sampler_from_string(sampler);
  const EmpiricalSample sample = cfg.sampler == SamplerKind::NaiveRejection
                                     ? sample_reactive_rejection(prob, cfg)
                                     : sample_reactive_htransform(prob, cfg);
  emit(out, sample_csv(sample), sample_sidecar(sample, cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reactive path length toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "sample conditioned (or free-running) path durations");
  ProblemOpts sim_po;
  SimOpts sim_so;
  std::string sim_sampler = "htransform";
  double sim_dx = 0.1, sim_dy = 0.1;
  sim_po.attach(sim_cmd);
  sim_so.attach(sim_cmd);
  sim_cmd->add_option("--sampler", sim_sampler,
                      "rejection | htransform | freerun");
  sim_cmd->add_option("--delta-x", sim_dx, "freerun: start well tolerance");
  sim_cmd->add_option("--delta-y", sim_dy, "freerun: target well tolerance");
  sim_cmd->add_option("--config", config_path, "JSON config file");
  sim_cmd->add_option("--out", out_path, "CSV output path (sidecar at .json)");

  // ams
  auto* ams_cmd =
      app.add_subcommand("ams", "adaptive splitting run for rare conditioning");
  ProblemOpts ams_po;
  SimOpts ams_so;
  int ams_kill = 1;
  ams_po.attach(ams_cmd);
  ams_so.attach(ams_cmd);
  auto* o_kill =
      ams_cmd->add_option("--kill-count", ams_kill, "replicas killed per step");
  ams_cmd->add_option("--config", config_path, "JSON config file");
  ams_cmd->add_option("--out", out_path, "CSV output path (sidecar at .json)");

  // exit-law
  auto* bvp_cmd = app.add_subcommand(
      "exit-law", "conditioned exit-time transform via the solver");
  ProblemOpts bvp_po;
  double bvp_s = 1.0;
  bvp_po.attach(bvp_cmd);
  bvp_cmd->add_option("--s", bvp_s, "transform argument");
  bvp_cmd->add_option("--config", config_path, "JSON config file");
  bvp_cmd->add_option("--out", out_path, "JSON output path");

  // laws
  auto* laws_cmd =
      app.add_subcommand("laws", "closed-form reference evaluations");
  std::string laws_which = "ou-exact";
  double laws_s = 1.0, laws_b = 0.9, laws_x = -0.89, laws_eps = 0.1;
  double laws_alpha = 1.0, laws_mu = -1.0, laws_a = -0.9;
  int laws_n = 1;
  std::string laws_pot = "quartic";
  laws_cmd->add_option(
      "--which", laws_which,
      "gumbel-laplace | tilde-g-laplace | ou-exact | ou-asymptotic | "
      "bm-drift | flat-laplace | flat-moments | correction-f | "
      "eyring-kramers | monomial-bound | exit-probability");
  laws_cmd->add_option("--s", laws_s, "transform argument");
  laws_cmd->add_option("--a", laws_a, "lower boundary");
  laws_cmd->add_option("--b", laws_b, "upper boundary / half width");
  laws_cmd->add_option("--x", laws_x, "start point");
  laws_cmd->add_option("--epsilon", laws_eps, "temperature");
  laws_cmd->add_option("--alpha", laws_alpha, "barrier curvature");
  laws_cmd->add_option("--mu", laws_mu, "drift");
  laws_cmd->add_option("--n", laws_n, "monomial index");
  laws_cmd->add_option("--potential", laws_pot, "potential tag");
  laws_cmd->add_option("--out", out_path, "JSON output path");

  // law
  auto* law_cmd = app.add_subcommand("law", "asymptotic law descriptor");
  std::string law_which = "double-well";
  double law_x = -0.89, law_b = 0.9, law_eps = 0.1;
  double law_alpha = 1.0, law_beta = 1.0, law_delta = 0.9;
  int law_n = 1;
  std::string law_pot = "quartic";
  law_cmd->add_option("--which", law_which,
                      "double-well | quadratic-barrier | bm-drift | flat | "
                      "monomial");
  law_cmd->add_option("--x", law_x, "start point");
  law_cmd->add_option("--b", law_b, "target / half width");
  law_cmd->add_option("--epsilon", law_eps, "temperature");
  law_cmd->add_option("--alpha", law_alpha, "barrier curvature");
  law_cmd->add_option("--beta", law_beta, "drift slope");
  law_cmd->add_option("--delta", law_delta, "target level");
  law_cmd->add_option("--n", law_n, "monomial index");
  law_cmd->add_option("--potential", law_pot, "potential tag");
  law_cmd->add_option("--out", out_path, "JSON output path");

  // verify
  auto* ver_cmd =
      app.add_subcommand("verify", "run the acceptance battery (slow)");
  std::vector<std::string> ver_suites;
  ver_cmd->add_option("suite", ver_suites,
                      "criterion names to run (default: all)");
  ver_cmd->add_option("--out", out_path, "JSON report path");

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "emit figure plot data");
  std::string fig_id;
  FigureConfig fig_cfg;
  fig_cmd->add_option("id", fig_id, "fig1 | fig2 | fig3")->required();
  auto* o_fpot =
      fig_cmd->add_option("--potential", fig_cfg.potential_tag, "potential tag");
  auto* o_fa = fig_cmd->add_option("--a", fig_cfg.a, "lower boundary");
  auto* o_fb = fig_cmd->add_option("--b", fig_cfg.b, "upper boundary");
  auto* o_fx = fig_cmd->add_option("--x", fig_cfg.x, "start point");
  auto* o_feps = fig_cmd->add_option("--epsilon", fig_cfg.epsilons,
                                     "temperature grid")
                     ->delimiter(',');
  auto* o_frep =
      fig_cmd->add_option("--replicas", fig_cfg.replicas, "sample size per eps");
  auto* o_fseed = fig_cmd->add_option("--seed", fig_cfg.seed, "rng seed");
  auto* o_fbud = fig_cmd->add_option("--budget-seconds", fig_cfg.budget_seconds,
                                     "wall budget; partial data is marked");
  fig_cmd->add_option("--config", config_path, "JSON config file");
  fig_cmd->add_option("--out", out_path,
                      "CSV output path (sidecar at .json; default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    ConfigSource conf;
    conf.load(config_path);

    if (*sim_cmd) {
      sim_po.fill(conf);
      sim_so.fill(conf);
      return run_simulate(sim_po, sim_so, sim_sampler, sim_dx, sim_dy,
                          out_path);
    }

    if (*ams_cmd) {
      ams_po.fill(conf);
      ams_so.fill(conf);
      conf.fill(o_kill, "kill_count", ams_kill);
      AmsConfig ac;
      ac.sim = ams_so.config(ams_po.epsilon);
      ac.n_replicas = ams_so.replicas;
      ac.sim.replicas = 1;
      ac.kill_count = ams_kill;
      const AmsResult res = run_ams(ams_po.problem(), ac);
      emit(out_path, sample_csv(res.sample), ams_sidecar(res, ac));
      return 0;
    }

    if (*bvp_cmd) {
      bvp_po.fill(conf);
      const ExitProblem prob = bvp_po.problem();
      const LaplaceEvaluation ev = laplace_bvp(prob, bvp_s);
      ordered_json j{{"inputs",
                      {{"potential", bvp_po.potential},
                       {"a", prob.a},
                       {"b", prob.b},
                       {"x", prob.x},
                       {"epsilon", prob.epsilon},
                       {"s", ev.s}}},
                     {"value", ev.value},
                     {"residual", ev.residual},
                     {"grid", ev.solver_grid_size},
                     {"exit_probability", exit_probability(prob)}};
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*laws_cmd) {
      ordered_json inputs, values;
      if (laws_which == "gumbel-laplace") {
        inputs = {{"s", laws_s}};
        values = {{"value", GumbelLaw::standard_laplace(laws_s)}};
      } else if (laws_which == "tilde-g-laplace") {
        inputs = {{"s", laws_s}};
        values = {{"value", TildeGLaw::laplace(laws_s)}};
      } else if (laws_which == "ou-exact") {
        inputs = {{"b", laws_b}, {"x", laws_x}, {"epsilon", laws_eps},
                  {"s", laws_s}};
        values = {{"value", ou_laplace_exact(laws_b, laws_x, laws_eps, laws_s)}};
      } else if (laws_which == "ou-asymptotic") {
        inputs = {{"b", laws_b},       {"x", laws_x}, {"epsilon", laws_eps},
                  {"s", laws_s},       {"alpha", laws_alpha}};
        values = {{"value", ou_laplace_asymptotic(laws_b, laws_x, laws_eps,
                                                  laws_s, laws_alpha)}};
      } else if (laws_which == "bm-drift") {
        inputs = {{"a", laws_a}, {"b", laws_b}, {"x", laws_x},
                  {"mu", laws_mu}, {"s", laws_s}};
        values = {{"value",
                   bm_drift_laplace(laws_a, laws_b, laws_x, laws_mu, laws_s)}};
      } else if (laws_which == "flat-laplace") {
        inputs = {{"b", laws_b}, {"epsilon", laws_eps}, {"s", laws_s}};
        values = {{"value", flat_laplace(laws_b, laws_eps, laws_s)}};
      } else if (laws_which == "flat-moments") {
        inputs = {{"b", laws_b}, {"epsilon", laws_eps}};
        const FlatMoments fm = flat_moments(laws_b, laws_eps);
        values = {{"mean", fm.mean}, {"variance", fm.variance}};
      } else if (laws_which == "correction-f") {
        inputs = {{"potential", laws_pot}, {"s", laws_s}};
        values = {{"value", correction_F(Potential::parse(laws_pot), laws_s)}};
      } else if (laws_which == "eyring-kramers") {
        inputs = {{"potential", laws_pot}, {"epsilon", laws_eps}};
        values = {{"value",
                   eyring_kramers_mean(Potential::parse(laws_pot), laws_eps)}};
      } else if (laws_which == "monomial-bound") {
        inputs = {{"n", laws_n}};
        values = {{"value", monomial_mean_bound(laws_n)}};
      } else if (laws_which == "exit-probability") {
        inputs = {{"potential", laws_pot}, {"a", laws_a},       {"b", laws_b},
                  {"x", laws_x},           {"epsilon", laws_eps}};
        values = {{"value",
                   exit_probability(ExitProblem{Potential::parse(laws_pot),
                                                laws_a, laws_b, laws_x,
                                                laws_eps})}};
      } else {
        throw DomainError("laws: unknown --which " + laws_which);
      }
      ordered_json j{{"which", laws_which}, {"inputs", inputs}};
      j.update(values);
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*law_cmd) {
      LimitLaw law;
      if (law_which == "double-well")
        law = double_well_limit_law(Potential::parse(law_pot), law_x, law_b, law_eps);
      else if (law_which == "quadratic-barrier")
        law = quadratic_barrier_limit_law(law_alpha, law_x, law_b, law_eps);
      else if (law_which == "bm-drift")
        law = bm_drift_limit(law_beta, law_delta, law_eps);
      else if (law_which == "flat")
        law = flat_limit(law_b, law_eps);
      else if (law_which == "monomial")
        law = monomial_limit(law_n, law_eps);
      else
        throw DomainError("law: unknown --which " + law_which);
      emit(out_path, law_json(law).dump(2) + "\n");
      return 0;
    }

    if (*ver_cmd) {
      VerifyReport rep = run_acceptance();
      if (!ver_suites.empty()) {
        std::vector<CriterionResult> kept;
        for (const auto& c : rep.criteria)
          for (const auto& s : ver_suites)
            if (c.name == s) kept.push_back(c);
        rep.criteria = std::move(kept);
      }
      emit(out_path, report_json(rep));
      return rep.all_passed() ? 0 : 1;
    }

    if (*fig_cmd) {
      conf.fill(o_fpot, "potential", fig_cfg.potential_tag);
      conf.fill(o_fa, "a", fig_cfg.a);
      conf.fill(o_fb, "b", fig_cfg.b);
      conf.fill(o_fx, "x", fig_cfg.x);
      conf.fill(o_feps, "epsilons", fig_cfg.epsilons);
      conf.fill(o_frep, "replicas", fig_cfg.replicas);
      conf.fill(o_fseed, "seed", fig_cfg.seed);
      conf.fill(o_fbud, "budget_seconds", fig_cfg.budget_seconds);
      FigureOutput out;
      if (fig_id == "fig1")
        out = figure_fig1(fig_cfg);
      else if (fig_id == "fig2")
        out = figure_fig2(fig_cfg);
      else if (fig_id == "fig3")
        out = figure_fig3(fig_cfg);
      else
        throw DomainError("figure: unknown id " + fig_id);
      emit(out_path, out.csv, out.sidecar);
      return out.truncated ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
