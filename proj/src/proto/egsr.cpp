#include "egrlab/proto/egsr.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "egrlab/proto/prompts.hpp"
#include "egrlab/rng.hpp"

namespace egrlab::proto {

namespace {

using faith::Verdict;

// Best similarity-times-gate product of a sub-answer over the evidence set.
double best_product(const std::string& text, const faith::EvidenceSet& evidence,
                    const faith::ScoringBackends& scoring) {
  double best = 0.0;
  for (const faith::Passage& p : evidence.passages) {
    const double s = scoring.sim->similarity(text, p.text);
    const int g = scoring.gate->signed_entailment(text, p.text) == 1 ? 1 : 0;
    best = std::max(best, s * g);
  }
  return best;
}

struct VerdictTally {
  double scores[3] = {0.0, 0.0, 0.0};

  void add(Verdict v, double confidence) { scores[static_cast<int>(v)] += confidence; }

  Verdict leader() const {
    int best = 0;
    for (int v = 1; v < 3; ++v) {
      if (scores[v] > scores[best]) {
        best = v;
      }
    }
    for (int v = 0; v < 3; ++v) {
      if (v != best && scores[v] == scores[best]) {
        return Verdict::kNotEnoughInfo;
      }
    }
    return static_cast<Verdict>(best);
  }

  // Margin between the top two shares of the accumulated scores.
  double gap() const {
    double sorted[3] = {scores[0], scores[1], scores[2]};
    std::sort(sorted, sorted + 3, std::greater<>());
    const double total = sorted[0] + sorted[1] + sorted[2];
    if (total <= 0.0) {
      return 0.0;
    }
    return (sorted[0] - sorted[1]) / total;
  }

  double leader_share() const {
    const double total = scores[0] + scores[1] + scores[2];
    if (total <= 0.0) {
      return 0.0;
    }
    return *std::max_element(scores, scores + 3) / total;
  }
};

}  // namespace

std::vector<faith::Passage> retrieve_topk(const std::string& question,
                                          const faith::EvidenceSet& evidence,
                                          const faith::SimilarityBackend& sim, int k) {
  evidence.validate_for_scoring();
  if (k < 1) {
    throw InvalidArgument("retrieve_topk needs k >= 1");
  }
  struct Ranked {
    double score;
    const faith::Passage* passage;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(evidence.passages.size());
  for (const faith::Passage& p : evidence.passages) {
    ranked.push_back({sim.similarity(question, p.text), &p});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) {
      return a.score > b.score;
    }
    return a.passage->id < b.passage->id;
  });
  std::vector<faith::Passage> out;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), ranked.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back(*ranked[i].passage);
  }
  return out;
}

double egsr_ess(const std::vector<double>& sub_answer_products) {
  if (sub_answer_products.empty()) {
    throw InvalidArgument("evidence sufficiency needs at least one sub-answer");
  }
  return std::accumulate(sub_answer_products.begin(), sub_answer_products.end(), 0.0) /
         static_cast<double>(sub_answer_products.size());
}

BackendReply hfsv_answer(const std::string& question,
                         const std::vector<faith::Passage>& retrieved,
                         AgentBackend& backend, const BackendRequest& base,
                         PromptRecord& record_out) {
  if (retrieved.empty()) {
    throw RetrievalEmpty("no passages retrieved for the sub-question");
  }
  BackendRequest request = base;
  request.role = AgentRole::kChecker;
  // Hypothesis-free: no claim text, no prior reasoning, only the question
  // and the retrieved passages.
  request.claim_text.clear();
  request.previous_round.clear();
  request.evidence = retrieved;
  request.question = question;
  request.prompt = prompts::hfsv_prompt(question, retrieved);

  BackendReply reply = backend.respond(request);
  record_out = {to_string(request.role), request.agent_index, request.round,
                request.prompt, reply.text};
  return reply;
}

EgsrResult egsr_run(const std::string& claim_text, const faith::EvidenceSet& evidence,
                    AgentBackend& backend, const faith::ScoringBackends& scoring,
                    const EgsrConfig& cfg, const ProtocolConfig& protocol,
                    std::uint64_t trial_seed, const std::string& claim_id,
                    std::optional<faith::Verdict> gold) {
  evidence.validate_for_scoring();
  EgsrResult result;

  const auto call = [&](AgentRole role, int round, int agent_index,
                        const std::string& prompt, const std::string& question,
                        const std::vector<faith::Passage>& shown_evidence,
                        const std::vector<faith::RoundOutput>& previous) {
    BackendRequest req;
    req.condition_id = protocol.condition_id;
    req.claim_id = claim_id;
    req.role = role;
    req.agent_index = agent_index;
    req.round = round;
    req.seed = rng::mix(rng::mix(rng::mix(trial_seed, claim_id),
                                 static_cast<std::uint64_t>(round * 19 + agent_index)),
                        to_string(role));
    req.prompt = prompt;
    req.claim_text = claim_text;
    req.evidence = shown_evidence;
    req.previous_round = previous;
    req.question = question;
    req.gold = gold;
    req.mock_profile = &protocol.mock;
    BackendReply reply = backend.respond(req);
    result.prompts.push_back({to_string(role), agent_index, round, req.prompt, reply.text});
    result.prompt_tokens += reply.prompt_tokens;
    result.completion_tokens += reply.completion_tokens;
    return reply;
  };

  // Round 0: the Debater sees the claim and the full evidence set.
  const BackendReply debater =
      call(AgentRole::kDebater, 0, 0,
           prompts::agent_prompt(protocol.condition_id, "debater", claim_text,
                                 evidence.passages, {}),
           "", evidence.passages, {});
  result.debater_initial = {0, "debater", debater.text, debater.verdict, debater.confidence};

  std::string composed = debater.text;
  VerdictTally tally;
  tally.add(debater.verdict, debater.confidence);
  Verdict previous_leader = tally.leader();

  result.round_snapshots.push_back(
      {faith::RoundOutput{0, "egsr", composed, previous_leader, tally.leader_share()}});

  const int per_iteration = cfg.parallel_questions ? 2 : 1;
  int question_index = 0;
  for (int iteration = 1; iteration <= cfg.max_iterations; ++iteration) {
    EgsrIterationRecord record;
    record.iteration = iteration;

    std::vector<double> products;
    std::string questions_joined;
    std::string answers_joined;
    std::vector<std::string> retrieved_ids;
    QuestionType first_type = cfg.question_cycle[static_cast<std::size_t>(question_index) %
                                                 cfg.question_cycle.size()];

    for (int q = 0; q < per_iteration; ++q) {
      const QuestionType qtype =
          cfg.question_cycle[static_cast<std::size_t>(question_index++) %
                             cfg.question_cycle.size()];
      if (q == 0) {
        first_type = qtype;
      }
      // The Questioner examines the composed trace and must reference the
      // evidence, so it sees both.
      const BackendReply question =
          call(AgentRole::kQuestioner, iteration, q,
               prompts::agent_prompt(protocol.condition_id, "questioner", claim_text,
                                     evidence.passages,
                                     result.round_snapshots.back(), to_string(qtype)),
               to_string(qtype), evidence.passages, result.round_snapshots.back());

      const std::vector<faith::Passage> retrieved =
          retrieve_topk(question.text, evidence, *scoring.sim, cfg.retrieve_k);
      for (const faith::Passage& p : retrieved) {
        retrieved_ids.push_back(p.id);
      }

      PromptRecord hfsv_record;
      BackendRequest base;
      base.condition_id = protocol.condition_id;
      base.claim_id = claim_id;
      base.agent_index = q;
      base.round = iteration;
      base.seed = rng::mix(rng::mix(trial_seed, claim_id),
                           static_cast<std::uint64_t>(1000 + iteration * 7 + q));
      base.gold = gold;
      base.mock_profile = &protocol.mock;
      const BackendReply answer =
          hfsv_answer(question.text, retrieved, backend, base, hfsv_record);
      result.prompts.push_back(hfsv_record);
      result.prompt_tokens += answer.prompt_tokens;
      result.completion_tokens += answer.completion_tokens;

      const double product = best_product(answer.text, evidence, scoring);
      products.push_back(product);
      tally.add(answer.verdict, answer.confidence);

      if (!questions_joined.empty()) {
        questions_joined += " | ";
      }
      questions_joined += question.text;
      if (!answers_joined.empty()) {
        answers_joined += " ";
      }
      answers_joined += answer.text;

      // Compose the trace with verified content only.
      if (product >= cfg.gate_threshold) {
        composed += " " + answer.text;
      }
    }

    record.question_type = first_type;
    record.question = questions_joined;
    record.sub_answer = answers_joined;
    record.retrieved_ids = retrieved_ids;
    record.gate_scores = products;
    record.ess = egsr_ess(products);
    record.gate_satisfied =
        *std::min_element(products.begin(), products.end()) >= cfg.gate_threshold;

    const Verdict leader = tally.leader();
    const bool stable = leader == previous_leader;
    previous_leader = leader;
    record.running_verdict = leader;
    record.confidence_gap = tally.gap();

    if (record.gate_satisfied) {
      record.converged = true;
      record.converged_by = "gate";
    } else {
      const int met = (record.ess >= cfg.ess_threshold ? 1 : 0) + (stable ? 1 : 0) +
                      (record.confidence_gap > cfg.confidence_gap ? 1 : 0);
      if (met >= cfg.convergence_needed) {
        record.converged = true;
        record.converged_by = "2-of-3";
      }
    }

    result.iterations.push_back(record);
    result.round_snapshots.push_back(
        {faith::RoundOutput{iteration, "egsr", composed, leader, tally.leader_share()}});
    if (record.converged) {
      break;
    }
  }

  result.composed_trace = composed;
  result.verdict = tally.leader();
  result.confidence = tally.leader_share();
  result.trajectory.condition_id = protocol.condition_id;
  for (const auto& snapshot : result.round_snapshots) {
    result.trajectory.per_round_sfs.push_back(
        faith::sfs(snapshot.front().text, evidence, scoring, faith::EmptyPolicy::kScoreZero)
            .sfs);
  }
  return result;
}

}  // namespace egrlab::proto
