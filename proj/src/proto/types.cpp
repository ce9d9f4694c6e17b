#include "egrlab/proto/types.hpp"

#include "egrlab/errors.hpp"

namespace egrlab::proto {

std::string to_string(Aggregation a) {
  switch (a) {
    case Aggregation::kNone:
      return "none";
    case Aggregation::kMajorityVote:
      return "majority-vote";
    case Aggregation::kSummary:
      return "summary";
    case Aggregation::kConformityVote:
      return "conformity-vote";
    case Aggregation::kDebaterJudge:
      return "debater-judge";
  }
  return "none";
}

std::string to_string(EvidencePolicy p) {
  switch (p) {
    case EvidencePolicy::kOnceAtT0:
      return "once-at-t0";
    case EvidencePolicy::kReinjectEveryRound:
      return "reinject-every-round";
    case EvidencePolicy::kRetrievalPerQuestion:
      return "retrieval-per-question";
  }
  return "once-at-t0";
}

std::string to_string(RoleStructure r) {
  switch (r) {
    case RoleStructure::kSymmetric:
      return "symmetric";
    case RoleStructure::kDebaterQuestionerChecker:
      return "debater-questioner-checker";
    case RoleStructure::kUnilateral:
      return "unilateral";
  }
  return "symmetric";
}

Aggregation aggregation_from_string(const std::string& s) {
  if (s == "none") return Aggregation::kNone;
  if (s == "majority-vote") return Aggregation::kMajorityVote;
  if (s == "summary") return Aggregation::kSummary;
  if (s == "conformity-vote") return Aggregation::kConformityVote;
  if (s == "debater-judge") return Aggregation::kDebaterJudge;
  throw ConfigError("unknown aggregation: " + s);
}

EvidencePolicy evidence_policy_from_string(const std::string& s) {
  if (s == "once-at-t0") return EvidencePolicy::kOnceAtT0;
  if (s == "reinject-every-round") return EvidencePolicy::kReinjectEveryRound;
  if (s == "retrieval-per-question") return EvidencePolicy::kRetrievalPerQuestion;
  throw ConfigError("unknown evidence policy: " + s);
}

RoleStructure role_structure_from_string(const std::string& s) {
  if (s == "symmetric") return RoleStructure::kSymmetric;
  if (s == "debater-questioner-checker") return RoleStructure::kDebaterQuestionerChecker;
  if (s == "unilateral") return RoleStructure::kUnilateral;
  throw ConfigError("unknown role structure: " + s);
}

std::string to_string(QuestionType q) {
  switch (q) {
    case QuestionType::kClarification:
      return "clarification";
    case QuestionType::kAssumptionProbing:
      return "assumption-probing";
    case QuestionType::kEvidenceDemanding:
      return "evidence-demanding";
    case QuestionType::kCounterExampleSeeking:
      return "counter-example-seeking";
    case QuestionType::kImplicationExploring:
      return "implication-exploring";
    case QuestionType::kMetaEvaluation:
      return "meta-evaluation";
  }
  return "clarification";
}

std::string to_string(RegimeLabel::Regime r) {
  return r == RegimeLabel::Regime::kClosed ? "closed" : "open";
}

void ProtocolConfig::validate() const {
  if (condition_id.empty()) {
    throw ConfigError("condition_id must be set");
  }
  if (agent_count < 1) {
    throw ConfigError("agent_count must be >= 1");
  }
  if (max_rounds < 0) {
    throw ConfigError("max_rounds must be >= 0");
  }
  const bool vote_rule =
      aggregation == Aggregation::kMajorityVote || aggregation == Aggregation::kConformityVote;
  if (vote_rule && agent_count < 2) {
    throw ConfigError("vote aggregation requires at least 2 agents");
  }
  if (egsr) {
    if (egsr->max_iterations < 1 || egsr->retrieve_k < 1) {
      throw ConfigError("EGSR iterations and retrieve_k must be >= 1");
    }
    if (egsr->question_cycle.empty()) {
      throw ConfigError("EGSR needs a non-empty question-type cycle");
    }
    const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(egsr->gate_threshold) || !in_unit(egsr->ess_threshold) ||
        !in_unit(egsr->confidence_gap)) {
      throw ConfigError("EGSR thresholds must lie in [0, 1]");
    }
  }
}

RegimeLabel classify_protocol(const ProtocolConfig& cfg) {
  cfg.validate();
  RegimeLabel label;
  // (i) shared parameters: a run drives every agent from one backend, so
  // this condition holds for every expressible config. (iii) likewise: the
  // runner only ever feeds round t-1 outputs into round t.
  if (cfg.evidence_policy != EvidencePolicy::kOnceAtT0) {
    label.violated_conditions.push_back("ii");
  }
  if (cfg.aggregation == Aggregation::kDebaterJudge ||
      cfg.role_structure != RoleStructure::kSymmetric) {
    // Asymmetric aggregation or asymmetric roles break (iv). EGSR's role
    // asymmetry is intentionally not counted here: its chain-breaking
    // property is the evidence re-injection, i.e. (ii).
    if (!cfg.egsr) {
      label.violated_conditions.push_back("iv");
    }
  }
  label.regime = cfg.evidence_policy == EvidencePolicy::kOnceAtT0
                     ? RegimeLabel::Regime::kClosed
                     : RegimeLabel::Regime::kOpen;
  label.vote_floor = cfg.aggregation == Aggregation::kMajorityVote;
  return label;
}

}  // namespace egrlab::proto
