#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egrlab/faith/types.hpp"

namespace egrlab::proto {

enum class Aggregation { kNone, kMajorityVote, kSummary, kConformityVote, kDebaterJudge };
enum class EvidencePolicy { kOnceAtT0, kReinjectEveryRound, kRetrievalPerQuestion };
enum class RoleStructure { kSymmetric, kDebaterQuestionerChecker, kUnilateral };

std::string to_string(Aggregation a);
std::string to_string(EvidencePolicy p);
std::string to_string(RoleStructure r);
Aggregation aggregation_from_string(const std::string& s);
EvidencePolicy evidence_policy_from_string(const std::string& s);
RoleStructure role_structure_from_string(const std::string& s);

enum class QuestionType {
  kClarification,
  kAssumptionProbing,
  kEvidenceDemanding,
  kCounterExampleSeeking,
  kImplicationExploring,
  kMetaEvaluation,
};

std::string to_string(QuestionType q);

struct EgsrConfig {
  int max_iterations = 3;  // distinct from any verdict-space size
  std::vector<QuestionType> question_cycle{
      QuestionType::kClarification,      QuestionType::kAssumptionProbing,
      QuestionType::kEvidenceDemanding,  QuestionType::kCounterExampleSeeking,
      QuestionType::kImplicationExploring, QuestionType::kMetaEvaluation};
  int retrieve_k = 5;
  double gate_threshold = 0.7;
  double ess_threshold = 0.75;
  double confidence_gap = 0.20;
  int convergence_needed = 2;  // of {ESS, stable verdict, confidence gap}
  bool parallel_questions = false;
};

// Knobs the scripted mock backends read; shipped with each condition file so
// desk runs are fully declarative.
struct MockProfile {
  int grounded_claims = 3;
  int filler_claims = 1;
  double decay_rate = 0.0;   // per-round chance a grounded sentence is dropped
  double copy_rate = 0.0;    // per-round chance a peer sentence is echoed
  double conformity = 0.0;   // chance an agent adopts the majority verdict
  double accuracy = 0.65;    // chance the initial verdict matches gold
};

// Declarative description of one experimental condition.
struct ProtocolConfig {
  std::string condition_id;
  std::string description;
  int agent_count = 1;
  int max_rounds = 0;  // debate rounds after the initial response
  Aggregation aggregation = Aggregation::kNone;
  EvidencePolicy evidence_policy = EvidencePolicy::kOnceAtT0;
  RoleStructure role_structure = RoleStructure::kSymmetric;
  std::optional<EgsrConfig> egsr;
  // Extra passages injected into the run-time evidence pool (adversarial
  // conditions); scoring still uses the corpus evidence.
  std::vector<faith::Passage> inject_passages;
  MockProfile mock;

  void validate() const;
};

// Which of the four Markov-closure conditions a config violates, and the
// regime that follows. vote_floor marks a final reduction to a K-way tally.
struct RegimeLabel {
  enum class Regime { kClosed, kOpen };
  Regime regime = Regime::kClosed;
  bool vote_floor = false;
  std::vector<std::string> violated_conditions;  // subset of {"i","ii","iii","iv"}
};

std::string to_string(RegimeLabel::Regime r);

RegimeLabel classify_protocol(const ProtocolConfig& cfg);

// One backend call as recorded in the artifact; prompt strings back the
// closed-prompt containment checks.
struct PromptRecord {
  std::string role;
  int agent_index = 0;
  int round = 0;
  std::string prompt;
  std::string response_text;
};

struct EgsrIterationRecord {
  int iteration = 0;
  QuestionType question_type = QuestionType::kClarification;
  std::string question;
  std::vector<std::string> retrieved_ids;
  std::string sub_answer;
  std::vector<double> gate_scores;
  double ess = 0.0;
  faith::Verdict running_verdict = faith::Verdict::kNotEnoughInfo;
  double confidence_gap = 0.0;
  bool gate_satisfied = false;
  bool converged = false;
  std::string converged_by;  // "gate", "2-of-3", or ""
};

struct TrialRecord {
  std::string claim_id;
  faith::Verdict gold = faith::Verdict::kNotEnoughInfo;
  std::vector<std::vector<faith::RoundOutput>> rounds;  // [round][agent]
  std::vector<PromptRecord> prompts;
  std::vector<EgsrIterationRecord> egsr_iterations;
  std::string final_text;
  faith::Verdict final_verdict = faith::Verdict::kNotEnoughInfo;
  double final_confidence = 0.0;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  // Zero under deterministic backends so replays stay byte-identical.
  long long elapsed_ms = 0;
  bool failed = false;
  std::string failure_reason;
  std::vector<std::string> wire_log;  // HTTP request/response dumps
};

inline constexpr int kRunSchemaVersion = 1;

struct RunManifest {
  int schema_version = kRunSchemaVersion;
  std::string condition_id;
  std::string config_json;  // full config snapshot
  std::string backend_name;
  std::string backend_kind;
  std::uint64_t seed = 0;
  std::string corpus_path;
  int trial_count = 0;
  int failure_count = 0;
};

struct RunArtifact {
  RunManifest manifest;
  std::vector<TrialRecord> trials;
};

}  // namespace egrlab::proto
