#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpaths/ams.hpp"
#include "rpaths/mc_sampler.hpp"

namespace rpaths {

struct FigureConfig {
  std::string potential_tag;  // empty = per-figure default
  double a = -0.9;
  double b = 0.9;
  double x = -0.89;
  std::vector<double> epsilons;  // empty = per-figure default grid
  int replicas = 0;              // 0 = per-figure default
  uint64_t seed = 1;
  double budget_seconds = 0.0;  // 0 = unlimited
};

// Rendered artifact: CSV plot data plus a JSON metadata sidecar embedding the
// resolved configuration and seed. Outputs are byte-deterministic given the
// configuration.
struct FigureOutput {
  std::string csv;
  std::string sidecar;  // serialized JSON
  bool truncated = false;
};

// Duration densities per epsilon for the double-well reactive path, their
// empirically centered versions, and the limiting Gumbel density curve.
// CSV columns: series, epsilon, x, y.
FigureOutput figure_fig1(const FigureConfig& cfg);

// Mean duration vs log epsilon with bootstrap confidence band and the
// limit-law mean, for the quadratic barrier (fig2) and the double well
// (fig3). CSV columns: log_epsilon, mean, ci_low, ci_high, theory.
FigureOutput figure_fig2(const FigureConfig& cfg);
FigureOutput figure_fig3(const FigureConfig& cfg);

// RFC 4180 field quoting.
std::string csv_field(const std::string& raw);

// Shortest decimal form that round-trips a double.
std::string format_double(double v);

// CSV of one duration per row: duration, attempts, replica, seed.
std::string sample_csv(const EmpiricalSample& sample);

// JSON metadata for a sample run; ams results add probability_estimate and
// iterations.
std::string sample_sidecar(const EmpiricalSample& sample, const SimConfig& cfg);
std::string ams_sidecar(const AmsResult& result, const AmsConfig& cfg);

}  // namespace rpaths
