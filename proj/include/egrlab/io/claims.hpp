#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "egrlab/faith/types.hpp"

namespace egrlab::io {

struct ClaimRecord {
  std::string claim_id;
  std::string claim_text;
  faith::Verdict gold_label = faith::Verdict::kNotEnoughInfo;
  std::vector<faith::Passage> evidence;

  faith::EvidenceSet evidence_set() const { return {claim_id, evidence}; }
};

// JSONL, one claim per line:
// {"claim_id": ..., "claim_text": ..., "gold_label": ..., "evidence":
//  [{"passage_id": ..., "text": ...}, ...]}
// Every malformed line raises a ParseError carrying its line number;
// duplicate claim ids are rejected.
std::vector<ClaimRecord> load_claims(const std::filesystem::path& path);

std::map<std::string, ClaimRecord> claims_by_id(const std::vector<ClaimRecord>& corpus);

}  // namespace egrlab::io
