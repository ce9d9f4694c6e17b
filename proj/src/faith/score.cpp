#include "egrlab/faith/score.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "egrlab/faith/diagnostics.hpp"

namespace egrlab::faith {

void EvidenceSet::validate_for_scoring() const {
  if (passages.empty()) {
    throw EmptyEvidence("evidence set is empty for claim " + claim_id);
  }
  std::vector<std::string> ids;
  ids.reserve(passages.size());
  for (const Passage& p : passages) {
    ids.push_back(p.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidArgument("duplicate passage id in evidence for claim " + claim_id);
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kSupports:
      return "SUPPORTS";
    case Verdict::kRefutes:
      return "REFUTES";
    case Verdict::kNotEnoughInfo:
      return "NOT-ENOUGH-INFO";
  }
  return "NOT-ENOUGH-INFO";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "SUPPORTS") {
    return Verdict::kSupports;
  }
  if (s == "REFUTES") {
    return Verdict::kRefutes;
  }
  if (s == "NOT-ENOUGH-INFO" || s == "NOT ENOUGH INFO" || s == "NEI") {
    return Verdict::kNotEnoughInfo;
  }
  throw InvalidArgument("unknown verdict label: " + s);
}

ClaimScore score_claim(const AtomicClaim& claim, const EvidenceSet& evidence,
                       const SimilarityBackend& sim, const EntailmentBackend& gate) {
  evidence.validate_for_scoring();

  // Iterate passages in id order so argmax ties resolve to the lowest id.
  std::vector<std::size_t> order(evidence.passages.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return evidence.passages[a].id < evidence.passages[b].id;
  });

  ClaimScore best;
  best.claim = claim;
  double best_product = -1.0;
  for (const std::size_t idx : order) {
    const Passage& passage = evidence.passages[idx];
    const double s = sim.similarity(claim.text, passage.text);
    const int signed_gate = gate.signed_entailment(claim.text, passage.text);
    const int g = signed_gate == 1 ? 1 : 0;
    const double product = s * g;
    // Strict improvement only: argmax ties resolve to the lowest id.
    if (product > best_product) {
      best_product = product;
      best.best_passage_id = passage.id;
      best.similarity = s;
      best.gate = g;
      best.polarity = signed_gate;
      best.support_mass = product;
    }
  }
  return best;
}

SfsReport sfs(const std::string& trace, const EvidenceSet& evidence,
              const ScoringBackends& backends, EmptyPolicy empty_policy,
              std::optional<double> tau_cite, std::optional<Verdict> final_verdict) {
  evidence.validate_for_scoring();
  const double cite_threshold = tau_cite.value_or(backends.gate->threshold());

  SfsReport report;
  std::vector<AtomicClaim> claims;
  try {
    claims = decompose(trace, *backends.decomposer);
  } catch (const EmptyDecomposition&) {
    if (empty_policy == EmptyPolicy::kError) {
      throw;
    }
    report.sfs = 0.0;
    report.claim_count = 0;
    report.eur = 0.0;
    if (final_verdict) {
      report.rcva = 0.0;
    }
    return report;
  }

  double mass = 0.0;
  report.claim_scores.reserve(claims.size());
  for (const AtomicClaim& claim : claims) {
    ClaimScore score = score_claim(claim, evidence, *backends.sim, *backends.gate);
    mass += score.support_mass;
    report.claim_scores.push_back(std::move(score));
  }
  report.claim_count = static_cast<int>(claims.size());
  report.sfs = mass / static_cast<double>(claims.size());
  report.eur = eur(trace, evidence, backends, cite_threshold);
  if (final_verdict) {
    report.rcva = rcva(report.claim_scores, *final_verdict);
  }
  return report;
}

std::string sfs_report_to_json(const SfsReport& report) {
  nlohmann::ordered_json doc;
  doc["sfs"] = report.sfs;
  doc["claim_count"] = report.claim_count;
  doc["eur"] = report.eur;
  doc["rcva"] = report.rcva ? nlohmann::ordered_json(*report.rcva)
                            : nlohmann::ordered_json(nullptr);
  doc["emc"] =
      report.emc ? nlohmann::ordered_json(*report.emc) : nlohmann::ordered_json(nullptr);
  doc["assumed_definitions"] = {"rcva", "emc"};
  nlohmann::ordered_json claims = nlohmann::ordered_json::array();
  for (const ClaimScore& cs : report.claim_scores) {
    nlohmann::ordered_json c;
    c["text"] = cs.claim.text;
    c["best_passage_id"] = cs.best_passage_id;
    c["similarity"] = cs.similarity;
    c["gate"] = cs.gate;
    c["polarity"] = cs.polarity;
    c["support_mass"] = cs.support_mass;
    claims.push_back(c);
  }
  doc["claims"] = claims;
  return doc.dump(2);
}

FaithfulnessTrajectory sfs_trajectory(const std::vector<std::vector<RoundOutput>>& rounds,
                                      const EvidenceSet& evidence,
                                      const ScoringBackends& backends,
                                      EmptyPolicy empty_policy) {
  FaithfulnessTrajectory traj;
  traj.per_round_sfs.reserve(rounds.size());
  for (const std::vector<RoundOutput>& round : rounds) {
    std::string combined;
    for (const RoundOutput& output : round) {
      if (!combined.empty() && !combined.ends_with(' ')) {
        combined += ' ';
      }
      combined += output.text;
    }
    traj.per_round_sfs.push_back(sfs(combined, evidence, backends, empty_policy).sfs);
  }
  return traj;
}

}  // namespace egrlab::faith
