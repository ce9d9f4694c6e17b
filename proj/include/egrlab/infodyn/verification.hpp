#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egrlab/infodyn/chain.hpp"

namespace egrlab::infodyn {

struct SuiteReport {
  std::string name;
  int instances = 0;
  int violations = 0;
  std::vector<std::uint64_t> offending_seeds;
  // Strictness accounting for the closed-chain suite.
  int strict_candidates = 0;
  int strict_decreases = 0;

  bool passed() const { return violations == 0; }
};

struct VerificationOptions {
  int chains = 1000;
  std::uint64_t seed = 7;
  int concentration_trials = 10000;
  int stopping_trials = 1000;
  // Self-test hook: inverts the monotonicity comparisons so the harness can
  // prove it reports violations.
  bool invert_checks = false;
};

// Mechanical verification of the formal results on random instances:
// closed-chain DPI with strictness, the KL gap bound, the f-divergence DPI
// family, open-chain recovery, the vote floor, the concentration bound, and
// optional stopping. Alphabets <= 8, chain length <= 6.
std::vector<SuiteReport> run_verification_suites(const VerificationOptions& options);

}  // namespace egrlab::infodyn
