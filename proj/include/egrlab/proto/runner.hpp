#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "egrlab/faith/score.hpp"
#include "egrlab/io/claims.hpp"
#include "egrlab/proto/backend.hpp"
#include "egrlab/proto/types.hpp"

namespace egrlab::proto {

// Majority rule with a deterministic tie-break (NOT-ENOUGH-INFO on exact
// ties). The tally text carries no decomposable claims by construction.
struct VoteOutcome {
  faith::Verdict verdict;
  std::string tally_text;
};
VoteOutcome aggregate_votes(const std::vector<faith::RoundOutput>& outputs,
                            Aggregation rule);

// One debate round: every agent responds to the previous round's outputs.
// Under once-at-t0 the prompts contain no evidence text; under
// reinject-every-round they contain the full evidence block.
std::vector<faith::RoundOutput> mad_step(const std::vector<faith::RoundOutput>& previous,
                                         const ProtocolConfig& cfg,
                                         const std::string& claim_text,
                                         const faith::EvidenceSet& run_evidence,
                                         AgentBackend& backend, std::uint64_t run_seed,
                                         const std::string& claim_id, int round,
                                         std::vector<PromptRecord>& prompts_out);

// Runs one condition over a corpus. Trials are independent; failures are
// recorded per-trial with a reason and never dropped. Deterministic for the
// mock backends under a fixed seed.
RunArtifact run_condition(const ProtocolConfig& cfg,
                          const std::vector<io::ClaimRecord>& corpus,
                          AgentBackend& backend, std::uint64_t seed, int jobs = 1,
                          const std::string& corpus_path = "");

}  // namespace egrlab::proto
