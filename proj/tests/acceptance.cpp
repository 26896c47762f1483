// Acceptance gate: runs the full verification battery and prints one line per
// criterion. Exit code 0 iff everything passed.

#include <cstdio>

#include "rpaths/verify.hpp"

int main() {
  const rpaths::VerifyReport rep = rpaths::run_acceptance();
  for (const auto& c : rep.criteria) {
    std::printf("[%s] %2d %-28s measured=%-12.6g threshold=%-12.6g %s\n",
                c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), c.measured,
                c.threshold, c.detail.c_str());
  }
  std::printf("%s\n", rep.all_passed() ? "ALL CRITERIA PASSED"
                                       : "SOME CRITERIA FAILED");
  return rep.all_passed() ? 0 : 1;
}
