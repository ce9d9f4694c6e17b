#include "egrlab/proto/prompts.hpp"

namespace egrlab::proto::prompts {

std::string evidence_block(const std::vector<faith::Passage>& passages) {
  std::string block = "Evidence:\n";
  for (const faith::Passage& p : passages) {
    block += "[" + p.id + "] " + p.text + "\n";
  }
  return block;
}

std::string previous_round_block(const std::vector<faith::RoundOutput>& outputs) {
  std::string block = "Previous round:\n";
  for (const faith::RoundOutput& o : outputs) {
    block += "(" + o.agent_id + ", " + faith::to_string(o.verdict) + ") " + o.text + "\n";
  }
  return block;
}

std::string agent_prompt(const std::string& condition_id, const std::string& role,
                         const std::string& claim_text,
                         const std::vector<faith::Passage>& evidence,
                         const std::vector<faith::RoundOutput>& previous_round,
                         const std::string& question) {
  std::string prompt = "Condition " + condition_id + ". Role: " + role +
                       ". Assess whether the claim is supported.\n";
  prompt += "Claim: " + claim_text + "\n";
  if (!evidence.empty()) {
    prompt += evidence_block(evidence);
  }
  if (!previous_round.empty()) {
    prompt += previous_round_block(previous_round);
  }
  if (!question.empty()) {
    prompt += "Question: " + question + "\n";
  }
  prompt += "State your reasoning, then end with a verdict line.";
  return prompt;
}

std::string hfsv_prompt(const std::string& question,
                        const std::vector<faith::Passage>& retrieved) {
  std::string prompt = "Question: " + question + "\n";
  prompt += evidence_block(retrieved);
  prompt += "Answer using only the passages above.";
  return prompt;
}

}  // namespace egrlab::proto::prompts
