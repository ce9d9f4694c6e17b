#include "egrlab/proto/conditions.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "egrlab/errors.hpp"

namespace egrlab::proto {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

QuestionType question_type_from_string(const std::string& s) {
  if (s == "clarification") return QuestionType::kClarification;
  if (s == "assumption-probing") return QuestionType::kAssumptionProbing;
  if (s == "evidence-demanding") return QuestionType::kEvidenceDemanding;
  if (s == "counter-example-seeking") return QuestionType::kCounterExampleSeeking;
  if (s == "implication-exploring") return QuestionType::kImplicationExploring;
  if (s == "meta-evaluation") return QuestionType::kMetaEvaluation;
  throw ConfigError("unknown question type: " + s);
}

EgsrConfig parse_egsr(const json& doc) {
  EgsrConfig cfg;
  cfg.max_iterations = doc.value("max_iterations", cfg.max_iterations);
  cfg.retrieve_k = doc.value("retrieve_k", cfg.retrieve_k);
  cfg.gate_threshold = doc.value("gate_threshold", cfg.gate_threshold);
  cfg.ess_threshold = doc.value("ess_threshold", cfg.ess_threshold);
  cfg.confidence_gap = doc.value("confidence_gap", cfg.confidence_gap);
  cfg.convergence_needed = doc.value("convergence_needed", cfg.convergence_needed);
  cfg.parallel_questions = doc.value("parallel_questions", cfg.parallel_questions);
  if (doc.contains("question_cycle")) {
    cfg.question_cycle.clear();
    for (const auto& q : doc.at("question_cycle")) {
      cfg.question_cycle.push_back(question_type_from_string(q.get<std::string>()));
    }
  }
  return cfg;
}

MockProfile parse_mock(const json& doc) {
  MockProfile m;
  m.grounded_claims = doc.value("grounded_claims", m.grounded_claims);
  m.filler_claims = doc.value("filler_claims", m.filler_claims);
  m.decay_rate = doc.value("decay_rate", m.decay_rate);
  m.copy_rate = doc.value("copy_rate", m.copy_rate);
  m.conformity = doc.value("conformity", m.conformity);
  m.accuracy = doc.value("accuracy", m.accuracy);
  return m;
}

}  // namespace

ProtocolConfig load_protocol_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open condition config: " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("condition config is not valid JSON: " + std::string(e.what()));
  }

  ProtocolConfig cfg;
  cfg.condition_id = doc.at("condition_id").get<std::string>();
  cfg.description = doc.value("description", "");
  cfg.agent_count = doc.value("agent_count", 1);
  cfg.max_rounds = doc.value("max_rounds", 0);
  cfg.aggregation = aggregation_from_string(doc.value("aggregation", "none"));
  cfg.evidence_policy =
      evidence_policy_from_string(doc.value("evidence_policy", "once-at-t0"));
  cfg.role_structure = role_structure_from_string(doc.value("role_structure", "symmetric"));
  if (doc.contains("egsr")) {
    cfg.egsr = parse_egsr(doc.at("egsr"));
  }
  if (doc.contains("mock")) {
    cfg.mock = parse_mock(doc.at("mock"));
  }
  for (const auto& p : doc.value("inject_passages", json::array())) {
    cfg.inject_passages.push_back(
        {p.at("passage_id").get<std::string>(), p.at("text").get<std::string>()});
  }
  cfg.validate();
  return cfg;
}

std::string protocol_config_to_json(const ProtocolConfig& cfg) {
  ordered_json doc;
  doc["condition_id"] = cfg.condition_id;
  doc["description"] = cfg.description;
  doc["agent_count"] = cfg.agent_count;
  doc["max_rounds"] = cfg.max_rounds;
  doc["aggregation"] = to_string(cfg.aggregation);
  doc["evidence_policy"] = to_string(cfg.evidence_policy);
  doc["role_structure"] = to_string(cfg.role_structure);
  if (cfg.egsr) {
    ordered_json e;
    e["max_iterations"] = cfg.egsr->max_iterations;
    ordered_json cycle = ordered_json::array();
    for (const QuestionType q : cfg.egsr->question_cycle) {
      cycle.push_back(to_string(q));
    }
    e["question_cycle"] = cycle;
    e["retrieve_k"] = cfg.egsr->retrieve_k;
    e["gate_threshold"] = cfg.egsr->gate_threshold;
    e["ess_threshold"] = cfg.egsr->ess_threshold;
    e["confidence_gap"] = cfg.egsr->confidence_gap;
    e["convergence_needed"] = cfg.egsr->convergence_needed;
    e["parallel_questions"] = cfg.egsr->parallel_questions;
    doc["egsr"] = e;
  }
  ordered_json mock;
  mock["grounded_claims"] = cfg.mock.grounded_claims;
  mock["filler_claims"] = cfg.mock.filler_claims;
  mock["decay_rate"] = cfg.mock.decay_rate;
  mock["copy_rate"] = cfg.mock.copy_rate;
  mock["conformity"] = cfg.mock.conformity;
  mock["accuracy"] = cfg.mock.accuracy;
  doc["mock"] = mock;
  if (!cfg.inject_passages.empty()) {
    ordered_json inject = ordered_json::array();
    for (const auto& p : cfg.inject_passages) {
      inject.push_back({{"passage_id", p.id}, {"text", p.text}});
    }
    doc["inject_passages"] = inject;
  }
  return doc.dump(2);
}

ProtocolConfig resolve_condition(const std::string& id_or_path,
                                 const std::filesystem::path& conditions_dir) {
  if (std::filesystem::exists(id_or_path) &&
      std::filesystem::is_regular_file(id_or_path)) {
    return load_protocol_config(id_or_path);
  }
  const std::filesystem::path candidate = conditions_dir / (id_or_path + ".json");
  if (std::filesystem::exists(candidate)) {
    return load_protocol_config(candidate);
  }
  throw ConfigError("condition not found: " + id_or_path + " (looked in " +
                    conditions_dir.string() + ")");
}

std::vector<std::string> list_conditions(const std::filesystem::path& conditions_dir) {
  std::vector<std::string> ids;
  if (!std::filesystem::is_directory(conditions_dir)) {
    throw IoError("conditions directory not found: " + conditions_dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(conditions_dir)) {
    if (entry.path().extension() == ".json") {
      ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
    // C2 before C10; fall back to lexicographic for non-C names.
    const auto num = [](const std::string& s) -> long {
      if (s.size() > 1 && (s[0] == 'C' || s[0] == 'c')) {
        try {
          return std::stol(s.substr(1));
        } catch (...) {
        }
      }
      return -1;
    };
    const long na = num(a);
    const long nb = num(b);
    if (na >= 0 && nb >= 0 && na != nb) {
      return na < nb;
    }
    return a < b;
  });
  return ids;
}

}  // namespace egrlab::proto
