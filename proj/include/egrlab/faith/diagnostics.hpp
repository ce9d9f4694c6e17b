#pragma once

#include <string>
#include <vector>

#include "egrlab/faith/score.hpp"
#include "egrlab/faith/types.hpp"

namespace egrlab::faith {

// Evidence utilization: the fraction of passages with some claim whose
// similarity-times-gate product against that passage reaches tau_cite.
double eur(const std::string& trace, const EvidenceSet& evidence,
           const ScoringBackends& backends, double tau_cite);

// Verdict-alignment rate (assumed definition): among claims the signed gate
// adjudicates (polarity != 0), the fraction whose polarity matches the final
// verdict. 0 when nothing is adjudicated.
double rcva(const std::vector<ClaimScore>& claim_scores, Verdict final_verdict);

// Echo coefficient (assumed definition): mean similarity between each
// agent's round-t text and every peer's round-(t-1) text. Throws
// InsufficientRounds with fewer than two rounds or no peer pairs.
double emc(const std::vector<std::vector<RoundOutput>>& rounds,
           const SimilarityBackend& sim);

// Greedy maximum-similarity matching at `match_threshold`;
// |matches| / (|a| + |b| - |matches|). Empty vs empty is 1, empty vs
// non-empty is 0.
double soft_jaccard(const std::vector<AtomicClaim>& a, const std::vector<AtomicClaim>& b,
                    const SimilarityBackend& sim, double match_threshold = 0.6);

}  // namespace egrlab::faith
