#pragma once

#include <optional>
#include <string>
#include <vector>

#include "egrlab/errors.hpp"

namespace egrlab::faith {

struct Passage {
  std::string id;
  std::string text;
};

// The evidence provided for one claim: the set every score is computed
// against.
struct EvidenceSet {
  std::string claim_id;
  std::vector<Passage> passages;

  // Throws EmptyEvidence / InvalidArgument on duplicate passage ids.
  void validate_for_scoring() const;
};

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// A single independently verifiable assertion extracted from a trace.
struct AtomicClaim {
  std::string text;
  std::optional<SourceSpan> source_span;
};

struct ClaimScore {
  AtomicClaim claim;
  std::string best_passage_id;
  double similarity = 0.0;
  int gate = 0;  // 1 iff the best passage entails the claim
  // Signed judgement against the best passage: +1 entailed, -1 contradicted,
  // 0 neither. Feeds the verdict-alignment diagnostic.
  int polarity = 0;
  double support_mass = 0.0;  // similarity * gate
};

enum class Verdict { kSupports, kRefutes, kNotEnoughInfo };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

// One agent's output at one round of a protocol run.
struct RoundOutput {
  int round_index = 0;
  std::string agent_id;
  std::string text;
  Verdict verdict = Verdict::kNotEnoughInfo;
  double confidence = 0.0;
};

struct SfsReport {
  double sfs = 0.0;
  std::vector<ClaimScore> claim_scores;
  int claim_count = 0;
  double eur = 0.0;
  // Diagnostics under assumed definitions (the verdict-alignment rate and
  // the echo coefficient); absent when their inputs are unavailable.
  std::optional<double> rcva;
  std::optional<double> emc;
};

struct FaithfulnessTrajectory {
  std::vector<double> per_round_sfs;
  std::string condition_id;
};

}  // namespace egrlab::faith
