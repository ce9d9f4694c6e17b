#pragma once

#include <string>
#include <vector>

#include "egrlab/faith/types.hpp"

namespace egrlab::proto::prompts {

std::string evidence_block(const std::vector<faith::Passage>& passages);
std::string previous_round_block(const std::vector<faith::RoundOutput>& outputs);

// Standard agent/debater/judge prompt. Evidence and previous-round blocks
// are included only when non-empty, which is what the closed-prompt
// containment checks key on.
std::string agent_prompt(const std::string& condition_id, const std::string& role,
                         const std::string& claim_text,
                         const std::vector<faith::Passage>& evidence,
                         const std::vector<faith::RoundOutput>& previous_round,
                         const std::string& question = "");

// Hypothesis-free verification prompt: question and retrieved passages only.
std::string hfsv_prompt(const std::string& question,
                        const std::vector<faith::Passage>& retrieved);

}  // namespace egrlab::proto::prompts
