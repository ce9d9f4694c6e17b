#pragma once

#include <string>
#include <vector>

#include "egrlab/faith/score.hpp"
#include "egrlab/proto/backend.hpp"
#include "egrlab/proto/types.hpp"

namespace egrlab::proto {

// The k most similar passages, ties broken by passage id; fewer when the
// evidence set is smaller than k.
std::vector<faith::Passage> retrieve_topk(const std::string& question,
                                          const faith::EvidenceSet& evidence,
                                          const faith::SimilarityBackend& sim, int k = 5);

// Evidence sufficiency for one iteration (assumed definition): the mean over
// sub-answers of the max per-passage similarity-times-gate product.
double egsr_ess(const std::vector<double>& sub_answer_products);

// One Hypothesis-Free Socratic Verification call: the checker prompt holds
// only the question and the retrieved passages, never the claim text or any
// prior reasoning.
BackendReply hfsv_answer(const std::string& question,
                         const std::vector<faith::Passage>& retrieved,
                         AgentBackend& backend, const BackendRequest& base,
                         PromptRecord& record_out);

struct EgsrResult {
  faith::RoundOutput debater_initial;
  std::vector<EgsrIterationRecord> iterations;
  std::vector<std::vector<faith::RoundOutput>> round_snapshots;  // cumulative trace
  std::vector<PromptRecord> prompts;
  std::string composed_trace;
  faith::Verdict verdict = faith::Verdict::kNotEnoughInfo;
  double confidence = 0.0;
  faith::FaithfulnessTrajectory trajectory;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
};

// Runs the Debater / Questioner / Checker loop for one claim: at most
// max_iterations rounds, each cycling the question types, retrieving top-k
// passages, answering hypothesis-free, gating the sub-answers, and updating
// the running verdict. The composed trace only ever grows by verified
// content.
EgsrResult egsr_run(const std::string& claim_text, const faith::EvidenceSet& evidence,
                    AgentBackend& backend, const faith::ScoringBackends& scoring,
                    const EgsrConfig& cfg, const ProtocolConfig& protocol,
                    std::uint64_t trial_seed, const std::string& claim_id,
                    std::optional<faith::Verdict> gold);

}  // namespace egrlab::proto
