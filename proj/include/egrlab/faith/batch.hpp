#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egrlab/faith/score.hpp"
#include "egrlab/io/claims.hpp"
#include "egrlab/proto/types.hpp"

namespace egrlab::faith {

struct TrialScore {
  std::string claim_id;
  std::string condition_id;
  double sfs = 0.0;
  double eur = 0.0;
  std::optional<double> rcva;
  std::optional<double> emc;
  int claim_count = 0;
  bool empty_decomposition = false;
  bool correct = false;
  bool failed = false;
};

struct ConditionScore {
  std::string condition_id;
  int trials = 0;
  int failures = 0;
  double accuracy = 0.0;
  double sfs = 0.0;
  double eur = 0.0;
  std::optional<double> rcva;
  std::optional<double> emc;
  double cost_tokens = 0.0;  // mean tokens per trial, the offline cost proxy
};

struct BatchScore {
  std::vector<TrialScore> trials;
  ConditionScore summary;
};

// Scores every recorded trial of a run against the corpus evidence (the
// provided evidence set, not any run-time injections). Failed trials are
// carried through with their flag; empty decompositions follow the policy.
BatchScore score_run(const proto::RunArtifact& run,
                     const std::map<std::string, io::ClaimRecord>& corpus,
                     const ScoringBackends& backends, EmptyPolicy empty_policy,
                     std::optional<double> tau_cite = std::nullopt, int jobs = 1);

// Per-round SFS over a trial's recorded rounds (EGSR rounds are cumulative
// snapshots, so this is the protocol's faithfulness trajectory).
FaithfulnessTrajectory trial_trajectory(const proto::TrialRecord& trial,
                                        const EvidenceSet& evidence,
                                        const ScoringBackends& backends);

}  // namespace egrlab::faith
