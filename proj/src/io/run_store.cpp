#include "egrlab/io/run_store.hpp"

#include <fstream>

#include <json.hpp>

namespace egrlab::io {

namespace {

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

ordered_json round_output_to_json(const faith::RoundOutput& o) {
  ordered_json doc;
  doc["round"] = o.round_index;
  doc["agent"] = o.agent_id;
  doc["text"] = o.text;
  doc["verdict"] = faith::to_string(o.verdict);
  doc["confidence"] = o.confidence;
  return doc;
}

faith::RoundOutput round_output_from_json(const json& doc) {
  faith::RoundOutput o;
  o.round_index = doc.at("round").get<int>();
  o.agent_id = doc.at("agent").get<std::string>();
  o.text = doc.at("text").get<std::string>();
  o.verdict = faith::verdict_from_string(doc.at("verdict").get<std::string>());
  o.confidence = doc.at("confidence").get<double>();
  return o;
}

ordered_json trial_to_json(const proto::TrialRecord& t) {
  ordered_json doc;
  doc["claim_id"] = t.claim_id;
  doc["gold"] = faith::to_string(t.gold);
  ordered_json rounds = ordered_json::array();
  for (const auto& round : t.rounds) {
    ordered_json one = ordered_json::array();
    for (const auto& output : round) {
      one.push_back(round_output_to_json(output));
    }
    rounds.push_back(one);
  }
  doc["rounds"] = rounds;
  ordered_json prompts = ordered_json::array();
  for (const auto& p : t.prompts) {
    prompts.push_back(ordered_json{{"role", p.role},
                                   {"agent", p.agent_index},
                                   {"round", p.round},
                                   {"prompt", p.prompt},
                                   {"response", p.response_text}});
  }
  doc["prompts"] = prompts;
  ordered_json iterations = ordered_json::array();
  for (const auto& it : t.egsr_iterations) {
    iterations.push_back(ordered_json{{"iteration", it.iteration},
                                      {"question_type", proto::to_string(it.question_type)},
                                      {"question", it.question},
                                      {"retrieved_ids", it.retrieved_ids},
                                      {"sub_answer", it.sub_answer},
                                      {"gate_scores", it.gate_scores},
                                      {"ess", it.ess},
                                      {"running_verdict", faith::to_string(it.running_verdict)},
                                      {"confidence_gap", it.confidence_gap},
                                      {"gate_satisfied", it.gate_satisfied},
                                      {"converged", it.converged},
                                      {"converged_by", it.converged_by}});
  }
  doc["egsr_iterations"] = iterations;
  doc["final_text"] = t.final_text;
  doc["final_verdict"] = faith::to_string(t.final_verdict);
  doc["final_confidence"] = t.final_confidence;
  doc["prompt_tokens"] = t.prompt_tokens;
  doc["completion_tokens"] = t.completion_tokens;
  doc["elapsed_ms"] = t.elapsed_ms;
  doc["failed"] = t.failed;
  doc["failure_reason"] = t.failure_reason;
  doc["wire_log"] = t.wire_log;
  return doc;
}

proto::QuestionType question_type_from_string(const std::string& s) {
  using QT = proto::QuestionType;
  if (s == "clarification") return QT::kClarification;
  if (s == "assumption-probing") return QT::kAssumptionProbing;
  if (s == "evidence-demanding") return QT::kEvidenceDemanding;
  if (s == "counter-example-seeking") return QT::kCounterExampleSeeking;
  if (s == "implication-exploring") return QT::kImplicationExploring;
  if (s == "meta-evaluation") return QT::kMetaEvaluation;
  throw ParseError("unknown question type: " + s, 0);
}

proto::TrialRecord trial_from_json(const json& doc) {
  proto::TrialRecord t;
  t.claim_id = doc.at("claim_id").get<std::string>();
  t.gold = faith::verdict_from_string(doc.at("gold").get<std::string>());
  for (const auto& round : doc.at("rounds")) {
    std::vector<faith::RoundOutput> one;
    for (const auto& output : round) {
      one.push_back(round_output_from_json(output));
    }
    t.rounds.push_back(std::move(one));
  }
  for (const auto& p : doc.at("prompts")) {
    t.prompts.push_back({p.at("role").get<std::string>(), p.at("agent").get<int>(),
                         p.at("round").get<int>(), p.at("prompt").get<std::string>(),
                         p.at("response").get<std::string>()});
  }
  for (const auto& it : doc.at("egsr_iterations")) {
    proto::EgsrIterationRecord rec;
    rec.iteration = it.at("iteration").get<int>();
    rec.question_type = question_type_from_string(it.at("question_type").get<std::string>());
    rec.question = it.at("question").get<std::string>();
    rec.retrieved_ids = it.at("retrieved_ids").get<std::vector<std::string>>();
    rec.sub_answer = it.at("sub_answer").get<std::string>();
    rec.gate_scores = it.at("gate_scores").get<std::vector<double>>();
    rec.ess = it.at("ess").get<double>();
    rec.running_verdict =
        faith::verdict_from_string(it.at("running_verdict").get<std::string>());
    rec.confidence_gap = it.at("confidence_gap").get<double>();
    rec.gate_satisfied = it.at("gate_satisfied").get<bool>();
    rec.converged = it.at("converged").get<bool>();
    rec.converged_by = it.at("converged_by").get<std::string>();
    t.egsr_iterations.push_back(std::move(rec));
  }
  t.final_text = doc.at("final_text").get<std::string>();
  t.final_verdict = faith::verdict_from_string(doc.at("final_verdict").get<std::string>());
  t.final_confidence = doc.at("final_confidence").get<double>();
  t.prompt_tokens = doc.at("prompt_tokens").get<long long>();
  t.completion_tokens = doc.at("completion_tokens").get<long long>();
  t.elapsed_ms = doc.at("elapsed_ms").get<long long>();
  t.failed = doc.at("failed").get<bool>();
  t.failure_reason = doc.at("failure_reason").get<std::string>();
  t.wire_log = doc.at("wire_log").get<std::vector<std::string>>();
  return t;
}

}  // namespace

void save_run(const proto::RunArtifact& artifact, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create run directory: " + dir.string());
  }

  ordered_json manifest;
  manifest["schema_version"] = artifact.manifest.schema_version;
  manifest["condition_id"] = artifact.manifest.condition_id;
  manifest["config"] =
      artifact.manifest.config_json.empty()
          ? ordered_json::object()
          : ordered_json::parse(artifact.manifest.config_json);
  manifest["backend_name"] = artifact.manifest.backend_name;
  manifest["backend_kind"] = artifact.manifest.backend_kind;
  manifest["seed"] = artifact.manifest.seed;
  manifest["corpus_path"] = artifact.manifest.corpus_path;
  manifest["trial_count"] = artifact.manifest.trial_count;
  manifest["failure_count"] = artifact.manifest.failure_count;

  std::ofstream manifest_out(dir / "manifest.json");
  if (!manifest_out) {
    throw IoError("cannot write manifest: " + (dir / "manifest.json").string());
  }
  manifest_out << manifest.dump(2) << '\n';

  std::ofstream trials_out(dir / "trials.jsonl");
  if (!trials_out) {
    throw IoError("cannot write trials: " + (dir / "trials.jsonl").string());
  }
  for (const proto::TrialRecord& t : artifact.trials) {
    trials_out << trial_to_json(t).dump() << '\n';
  }
}

proto::RunArtifact load_run(const std::filesystem::path& dir) {
  std::ifstream manifest_in(dir / "manifest.json");
  if (!manifest_in) {
    throw IoError("cannot open manifest: " + (dir / "manifest.json").string());
  }
  ordered_json manifest;
  try {
    manifest_in >> manifest;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what(), 1);
  }

  proto::RunArtifact artifact;
  artifact.manifest.schema_version = manifest.at("schema_version").get<int>();
  if (artifact.manifest.schema_version != proto::kRunSchemaVersion) {
    throw ManifestVersionMismatch(
        "run schema version " + std::to_string(artifact.manifest.schema_version) +
        " does not match " + std::to_string(proto::kRunSchemaVersion));
  }
  artifact.manifest.condition_id = manifest.at("condition_id").get<std::string>();
  artifact.manifest.config_json = manifest.at("config").dump(2);
  artifact.manifest.backend_name = manifest.at("backend_name").get<std::string>();
  artifact.manifest.backend_kind = manifest.at("backend_kind").get<std::string>();
  artifact.manifest.seed = manifest.at("seed").get<std::uint64_t>();
  artifact.manifest.corpus_path = manifest.at("corpus_path").get<std::string>();
  artifact.manifest.trial_count = manifest.at("trial_count").get<int>();
  artifact.manifest.failure_count = manifest.at("failure_count").get<int>();

  std::ifstream trials_in(dir / "trials.jsonl");
  if (!trials_in) {
    throw IoError("cannot open trials: " + (dir / "trials.jsonl").string());
  }
  std::string line;
  std::size_t index = 0;
  while (std::getline(trials_in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      artifact.trials.push_back(trial_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad trial record: ") + e.what(), index + 1);
    }
    ++index;
  }
  return artifact;
}

}  // namespace egrlab::io
