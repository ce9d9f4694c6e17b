#include "egrlab/io/claims.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace egrlab::io {

namespace {

using nlohmann::json;

std::string require_string(const json& doc, const char* field, std::size_t line) {
  if (!doc.contains(field)) {
    throw MissingField(std::string("missing field '") + field + "' at line " +
                       std::to_string(line));
  }
  if (!doc.at(field).is_string()) {
    throw ParseError(std::string("field '") + field + "' must be a string", line);
  }
  return doc.at(field).get<std::string>();
}

}  // namespace

std::vector<ClaimRecord> load_claims(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open claim corpus: " + path.string());
  }

  std::vector<ClaimRecord> corpus;
  std::set<std::string> seen;
  std::string raw_line;
  std::size_t line_number = 0;
  while (std::getline(in, raw_line)) {
    ++line_number;
    if (raw_line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    json doc;
    try {
      doc = json::parse(raw_line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_number);
    }

    ClaimRecord record;
    record.claim_id = require_string(doc, "claim_id", line_number);
    record.claim_text = require_string(doc, "claim_text", line_number);
    try {
      record.gold_label = faith::verdict_from_string(require_string(doc, "gold_label", line_number));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_number);
    }
    if (!doc.contains("evidence") || !doc.at("evidence").is_array()) {
      throw MissingField("missing field 'evidence' at line " + std::to_string(line_number));
    }
    for (const auto& p : doc.at("evidence")) {
      record.evidence.push_back(
          {require_string(p, "passage_id", line_number), require_string(p, "text", line_number)});
    }

    if (!seen.insert(record.claim_id).second) {
      throw DuplicateId("duplicate claim_id '" + record.claim_id + "' at line " +
                        std::to_string(line_number));
    }
    corpus.push_back(std::move(record));
  }
  return corpus;
}

std::map<std::string, ClaimRecord> claims_by_id(const std::vector<ClaimRecord>& corpus) {
  std::map<std::string, ClaimRecord> by_id;
  for (const ClaimRecord& record : corpus) {
    by_id.emplace(record.claim_id, record);
  }
  return by_id;
}

}  // namespace egrlab::io
