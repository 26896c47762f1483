#pragma once

#include <string>
#include <vector>

namespace rpaths {

// One acceptance check. measured/threshold describe the binding (worst
// margin) quantity; detail lists every sub-check.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

// Runs the full acceptance battery (deterministic, fixed seeds). Several
// checks are Monte Carlo heavy; expect a few minutes of wall time.
VerifyReport run_acceptance();

// JSON serialization of the report.
std::string report_json(const VerifyReport& report);

}  // namespace rpaths
