#pragma once

#include <optional>
#include <string>
#include <vector>

#include "egrlab/faith/backends.hpp"
#include "egrlab/faith/decompose.hpp"
#include "egrlab/faith/types.hpp"

namespace egrlab::faith {

// The deterministic scoring stack used everywhere a trace is measured.
struct ScoringBackends {
  const Decomposer* decomposer = nullptr;
  const SimilarityBackend* sim = nullptr;
  const EntailmentBackend* gate = nullptr;
};

// How to treat traces that decompose to nothing: erroring keeps degenerate
// vote-tally outputs visible; scoring them zero is the batch floor path.
enum class EmptyPolicy { kError, kScoreZero };

// Max over passages of similarity * gate, ties by lowest passage id.
ClaimScore score_claim(const AtomicClaim& claim, const EvidenceSet& evidence,
                       const SimilarityBackend& sim, const EntailmentBackend& gate);

// Decompose -> gate -> aggregate. The report's eur uses tau_cite, defaulting
// to the gate threshold. rcva is filled when a final verdict is supplied.
SfsReport sfs(const std::string& trace, const EvidenceSet& evidence,
              const ScoringBackends& backends,
              EmptyPolicy empty_policy = EmptyPolicy::kError,
              std::optional<double> tau_cite = std::nullopt,
              std::optional<Verdict> final_verdict = std::nullopt);

// One SFS value per round over the round's concatenated outputs.
FaithfulnessTrajectory sfs_trajectory(const std::vector<std::vector<RoundOutput>>& rounds,
                                      const EvidenceSet& evidence,
                                      const ScoringBackends& backends,
                                      EmptyPolicy empty_policy = EmptyPolicy::kScoreZero);

// Stable field order; rcva/emc are flagged as assumed definitions.
std::string sfs_report_to_json(const SfsReport& report);

}  // namespace egrlab::faith
