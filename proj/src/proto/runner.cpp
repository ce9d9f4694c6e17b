#include "egrlab/proto/runner.hpp"

#include <algorithm>
#include <map>

#include "egrlab/parallel.hpp"
#include "egrlab/proto/conditions.hpp"
#include "egrlab/proto/egsr.hpp"
#include "egrlab/proto/prompts.hpp"
#include "egrlab/rng.hpp"

namespace egrlab::proto {

namespace {

using faith::RoundOutput;
using faith::Verdict;

std::uint64_t call_seed(std::uint64_t run_seed, const std::string& claim_id, int round,
                        int agent_index, AgentRole role) {
  // Condition-independent so the round-0 correctness coins line up across
  // conditions run with the same seed.
  return rng::mix(rng::mix(rng::mix(run_seed, claim_id),
                           static_cast<std::uint64_t>(round) * 997ULL +
                               static_cast<std::uint64_t>(agent_index)),
                  to_string(role));
}

Verdict strict_majority(const std::vector<RoundOutput>& outputs) {
  int counts[3] = {0, 0, 0};
  for (const RoundOutput& o : outputs) {
    counts[static_cast<int>(o.verdict)] += 1;
  }
  int best = 0;
  for (int v = 1; v < 3; ++v) {
    if (counts[v] > counts[best]) {
      best = v;
    }
  }
  for (int v = 0; v < 3; ++v) {
    if (v != best && counts[v] == counts[best]) {
      return Verdict::kNotEnoughInfo;
    }
  }
  return static_cast<Verdict>(best);
}

std::string concat_texts(const std::vector<RoundOutput>& outputs) {
  std::string text;
  for (const RoundOutput& o : outputs) {
    if (!text.empty()) {
      text += ' ';
    }
    text += o.text;
  }
  return text;
}

struct TrialContext {
  const ProtocolConfig& cfg;
  const io::ClaimRecord& record;
  AgentBackend& backend;
  std::uint64_t run_seed;
};

BackendReply call_backend(const TrialContext& ctx, AgentRole role, int round,
                          int agent_index, const std::string& prompt,
                          const std::vector<faith::Passage>& evidence,
                          const std::vector<RoundOutput>& previous,
                          TrialRecord& trial) {
  BackendRequest req;
  req.condition_id = ctx.cfg.condition_id;
  req.claim_id = ctx.record.claim_id;
  req.role = role;
  req.agent_index = agent_index;
  req.round = round;
  req.seed = call_seed(ctx.run_seed, ctx.record.claim_id, round, agent_index, role);
  req.prompt = prompt;
  req.claim_text = ctx.record.claim_text;
  req.evidence = evidence;
  req.previous_round = previous;
  req.gold = ctx.record.gold_label;
  req.mock_profile = &ctx.cfg.mock;

  BackendReply reply = ctx.backend.respond(req);
  trial.prompts.push_back({to_string(role), agent_index, round, prompt, reply.text});
  trial.prompt_tokens += reply.prompt_tokens;
  trial.completion_tokens += reply.completion_tokens;
  for (std::string& entry : reply.wire_log) {
    trial.wire_log.push_back(std::move(entry));
  }
  return reply;
}

// One protocol round shared by the runner and the public mad_step: round 0
// presents the evidence, later rounds only under reinject-every-round.
std::vector<RoundOutput> step_round(const ProtocolConfig& cfg, const std::string& claim_text,
                                    const std::string& claim_id,
                                    const faith::EvidenceSet& run_evidence,
                                    const std::vector<RoundOutput>& previous,
                                    AgentBackend& backend, std::uint64_t run_seed, int round,
                                    std::optional<faith::Verdict> gold,
                                    TrialRecord* accounting,
                                    std::vector<PromptRecord>* prompts_out) {
  const bool show_evidence =
      round == 0 || cfg.evidence_policy == EvidencePolicy::kReinjectEveryRound;
  const std::vector<faith::Passage> shown =
      show_evidence ? run_evidence.passages : std::vector<faith::Passage>{};

  std::vector<RoundOutput> outputs;
  outputs.reserve(static_cast<std::size_t>(cfg.agent_count));
  for (int agent = 0; agent < cfg.agent_count; ++agent) {
    BackendRequest req;
    req.condition_id = cfg.condition_id;
    req.claim_id = claim_id;
    req.role = AgentRole::kAgent;
    req.agent_index = agent;
    req.round = round;
    req.seed = call_seed(run_seed, claim_id, round, agent, AgentRole::kAgent);
    req.prompt = prompts::agent_prompt(cfg.condition_id, "agent", claim_text, shown, previous);
    req.claim_text = claim_text;
    req.evidence = shown;
    req.previous_round = previous;
    req.gold = gold;
    req.mock_profile = &cfg.mock;

    BackendReply reply = backend.respond(req);
    if (prompts_out != nullptr) {
      prompts_out->push_back(
          {to_string(req.role), agent, round, req.prompt, reply.text});
    }
    if (accounting != nullptr) {
      accounting->prompt_tokens += reply.prompt_tokens;
      accounting->completion_tokens += reply.completion_tokens;
      for (std::string& entry : reply.wire_log) {
        accounting->wire_log.push_back(std::move(entry));
      }
    }
    outputs.push_back(
        {round, "a" + std::to_string(agent), reply.text, reply.verdict, reply.confidence});
  }
  return outputs;
}

TrialRecord run_trial(const TrialContext& ctx) {
  TrialRecord trial;
  trial.claim_id = ctx.record.claim_id;
  trial.gold = ctx.record.gold_label;

  faith::EvidenceSet run_evidence = ctx.record.evidence_set();
  for (const faith::Passage& p : ctx.cfg.inject_passages) {
    run_evidence.passages.push_back(p);
  }
  // A trial without evidence cannot be prompted or verified; record the
  // failure instead of producing an unverifiable trace.
  run_evidence.validate_for_scoring();

  if (ctx.cfg.egsr) {
    static const faith::TokenOverlapSimilarity sim;
    static const faith::RuleDecomposerV1 decomposer;
    const faith::ContainmentEntailment gate(ctx.cfg.egsr->gate_threshold);
    const faith::ScoringBackends scoring{&decomposer, &sim, &gate};
    EgsrResult r = egsr_run(ctx.record.claim_text, run_evidence, ctx.backend, scoring,
                            *ctx.cfg.egsr, ctx.cfg, ctx.run_seed, ctx.record.claim_id,
                            ctx.record.gold_label);
    trial.rounds = std::move(r.round_snapshots);
    trial.prompts = std::move(r.prompts);
    trial.egsr_iterations = std::move(r.iterations);
    trial.final_text = std::move(r.composed_trace);
    trial.final_verdict = r.verdict;
    trial.final_confidence = r.confidence;
    trial.prompt_tokens = r.prompt_tokens;
    trial.completion_tokens = r.completion_tokens;
    return trial;
  }

  // Round 0 presents the evidence; later rounds go through the same shared
  // step, which re-presents it only under reinject-every-round.
  for (int round = 0; round <= ctx.cfg.max_rounds; ++round) {
    const std::vector<RoundOutput> previous =
        round == 0 ? std::vector<RoundOutput>{} : trial.rounds.back();
    trial.rounds.push_back(step_round(ctx.cfg, ctx.record.claim_text, ctx.record.claim_id,
                                      run_evidence, previous, ctx.backend, ctx.run_seed,
                                      round, ctx.record.gold_label, &trial,
                                      &trial.prompts));
  }

  const std::vector<RoundOutput>& final_round = trial.rounds.back();
  switch (ctx.cfg.aggregation) {
    case Aggregation::kNone: {
      trial.final_text = concat_texts(final_round);
      trial.final_verdict = strict_majority(final_round);
      double conf = 0.0;
      for (const RoundOutput& o : final_round) {
        conf += o.confidence;
      }
      trial.final_confidence = conf / static_cast<double>(final_round.size());
      break;
    }
    case Aggregation::kMajorityVote: {
      const VoteOutcome vote = aggregate_votes(final_round, ctx.cfg.aggregation);
      // The vote tally replaces the reasoning entirely.
      trial.final_text = vote.tally_text;
      trial.final_verdict = vote.verdict;
      trial.final_confidence = 0.85;
      break;
    }
    case Aggregation::kConformityVote: {
      const VoteOutcome vote = aggregate_votes(final_round, ctx.cfg.aggregation);
      trial.final_text = concat_texts(final_round) + " " + vote.tally_text;
      trial.final_verdict = vote.verdict;
      trial.final_confidence = 0.8;
      break;
    }
    case Aggregation::kSummary:
    case Aggregation::kDebaterJudge: {
      const std::string role =
          ctx.cfg.aggregation == Aggregation::kSummary ? "judge" : "judge";
      const std::string prompt = prompts::agent_prompt(
          ctx.cfg.condition_id, role, ctx.record.claim_text, {}, final_round);
      const BackendReply judge = call_backend(ctx, AgentRole::kJudge,
                                              ctx.cfg.max_rounds + 1, 0, prompt, {},
                                              final_round, trial);
      trial.final_text = judge.text;
      trial.final_verdict = judge.verdict;
      trial.final_confidence = judge.confidence;
      break;
    }
  }
  return trial;
}

}  // namespace

VoteOutcome aggregate_votes(const std::vector<RoundOutput>& outputs, Aggregation rule) {
  if (outputs.empty()) {
    throw InvalidArgument("vote aggregation needs at least one output");
  }
  if (rule != Aggregation::kMajorityVote && rule != Aggregation::kConformityVote) {
    throw InvalidArgument("aggregate_votes expects a vote-style aggregation rule");
  }
  VoteOutcome outcome;
  outcome.verdict = strict_majority(outputs);

  int counts[3] = {0, 0, 0};
  for (const RoundOutput& o : outputs) {
    counts[static_cast<int>(o.verdict)] += 1;
  }
  std::vector<int> nonzero;
  for (const int c : counts) {
    if (c > 0) {
      nonzero.push_back(c);
    }
  }
  std::sort(nonzero.begin(), nonzero.end(), std::greater<>());
  std::string split;
  for (const int c : nonzero) {
    if (!split.empty()) {
      split += '-';
    }
    split += std::to_string(c);
  }
  outcome.tally_text = "Final vote: " + faith::to_string(outcome.verdict) + " (" +
                       std::to_string(outputs.size()) + " votes: " + split + ")";
  return outcome;
}

std::vector<RoundOutput> mad_step(const std::vector<RoundOutput>& previous,
                                  const ProtocolConfig& cfg, const std::string& claim_text,
                                  const faith::EvidenceSet& run_evidence,
                                  AgentBackend& backend, std::uint64_t run_seed,
                                  const std::string& claim_id, int round,
                                  std::vector<PromptRecord>& prompts_out) {
  if (round < 1) {
    throw InvalidArgument("mad_step applies to rounds >= 1");
  }
  return step_round(cfg, claim_text, claim_id, run_evidence, previous, backend, run_seed,
                    round, std::nullopt, nullptr, &prompts_out);
}

RunArtifact run_condition(const ProtocolConfig& cfg,
                          const std::vector<io::ClaimRecord>& corpus,
                          AgentBackend& backend, std::uint64_t seed, int jobs,
                          const std::string& corpus_path) {
  cfg.validate();
  if (corpus.empty()) {
    throw InvalidArgument("cannot run a condition over an empty corpus");
  }

  RunArtifact artifact;
  artifact.manifest.condition_id = cfg.condition_id;
  artifact.manifest.config_json = protocol_config_to_json(cfg);
  artifact.manifest.backend_name = backend.name();
  artifact.manifest.backend_kind = backend.kind();
  artifact.manifest.seed = seed;
  artifact.manifest.corpus_path = corpus_path;

  artifact.trials.resize(corpus.size());
  // Trials land in index-addressed slots, so scheduling cannot reorder the
  // artifact; the HTTP backend throttles itself via max-in-flight.
  parallel_for(corpus.size(), jobs, [&](std::size_t i) {
    const TrialContext ctx{cfg, corpus[i], backend, seed};
    try {
      artifact.trials[i] = run_trial(ctx);
    } catch (const std::exception& e) {
      TrialRecord failed;
      failed.claim_id = corpus[i].claim_id;
      failed.gold = corpus[i].gold_label;
      failed.failed = true;
      failed.failure_reason = e.what();
      artifact.trials[i] = std::move(failed);
    }
  });

  artifact.manifest.trial_count = static_cast<int>(artifact.trials.size());
  artifact.manifest.failure_count = static_cast<int>(
      std::count_if(artifact.trials.begin(), artifact.trials.end(),
                    [](const TrialRecord& t) { return t.failed; }));
  return artifact;
}

}  // namespace egrlab::proto
