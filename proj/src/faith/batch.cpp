#include "egrlab/faith/batch.hpp"

#include "egrlab/faith/diagnostics.hpp"
#include "egrlab/parallel.hpp"

namespace egrlab::faith {

BatchScore score_run(const proto::RunArtifact& run,
                     const std::map<std::string, io::ClaimRecord>& corpus,
                     const ScoringBackends& backends, EmptyPolicy empty_policy,
                     std::optional<double> tau_cite, int jobs) {
  BatchScore batch;
  batch.trials.resize(run.trials.size());

  parallel_for(run.trials.size(), jobs, [&](std::size_t i) {
    const proto::TrialRecord& trial = run.trials[i];
    TrialScore score;
    score.claim_id = trial.claim_id;
    score.condition_id = run.manifest.condition_id;
    if (trial.failed) {
      score.failed = true;
      batch.trials[i] = std::move(score);
      return;
    }
    const auto found = corpus.find(trial.claim_id);
    if (found == corpus.end()) {
      score.failed = true;
      batch.trials[i] = std::move(score);
      return;
    }
    const EvidenceSet evidence = found->second.evidence_set();
    score.correct = trial.final_verdict == trial.gold;

    SfsReport report;
    try {
      report = sfs(trial.final_text, evidence, backends, empty_policy, tau_cite,
                   trial.final_verdict);
    } catch (const EmptyDecomposition&) {
      // Under the error policy a degenerate output is reported loudly as a
      // scoring failure instead of a silent zero.
      score.empty_decomposition = true;
      score.failed = true;
      batch.trials[i] = std::move(score);
      return;
    } catch (const Error&) {
      score.failed = true;
      batch.trials[i] = std::move(score);
      return;
    }
    score.sfs = report.sfs;
    score.eur = report.eur;
    score.rcva = report.rcva;
    score.claim_count = report.claim_count;
    score.empty_decomposition = report.claim_count == 0;
    if (trial.rounds.size() >= 2) {
      try {
        score.emc = emc(trial.rounds, *backends.sim);
      } catch (const InsufficientRounds&) {
        // single-agent chains have no peer pairs; leave absent
      }
    }
    batch.trials[i] = std::move(score);
  });

  ConditionScore& summary = batch.summary;
  summary.condition_id = run.manifest.condition_id;
  summary.trials = static_cast<int>(run.trials.size());
  double rcva_sum = 0.0;
  int rcva_n = 0;
  double emc_sum = 0.0;
  int emc_n = 0;
  long long token_sum = 0;
  int ok = 0;
  for (std::size_t i = 0; i < batch.trials.size(); ++i) {
    const TrialScore& t = batch.trials[i];
    if (t.failed) {
      ++summary.failures;
      continue;
    }
    ++ok;
    summary.accuracy += t.correct ? 1.0 : 0.0;
    summary.sfs += t.sfs;
    summary.eur += t.eur;
    if (t.rcva) {
      rcva_sum += *t.rcva;
      ++rcva_n;
    }
    if (t.emc) {
      emc_sum += *t.emc;
      ++emc_n;
    }
    token_sum += run.trials[i].prompt_tokens + run.trials[i].completion_tokens;
  }
  if (ok > 0) {
    summary.accuracy /= ok;
    summary.sfs /= ok;
    summary.eur /= ok;
    summary.cost_tokens = static_cast<double>(token_sum) / ok;
    if (rcva_n > 0) {
      summary.rcva = rcva_sum / rcva_n;
    }
    if (emc_n > 0) {
      summary.emc = emc_sum / emc_n;
    }
  }
  return batch;
}

FaithfulnessTrajectory trial_trajectory(const proto::TrialRecord& trial,
                                        const EvidenceSet& evidence,
                                        const ScoringBackends& backends) {
  return sfs_trajectory(trial.rounds, evidence, backends, EmptyPolicy::kScoreZero);
}

}  // namespace egrlab::faith
