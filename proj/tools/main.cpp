// egrlab command-line harness: invariant-verification suites, condition runs,
// trace scoring, statistical analysis, and report emission.
//
// Exit codes: 0 success, 1 invariant/test failure, 2 configuration error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "egrlab/faith/batch.hpp"
#include "egrlab/infodyn/chain_spec.hpp"
#include "egrlab/infodyn/verification.hpp"
#include "egrlab/io/claims.hpp"
#include "egrlab/io/ratings.hpp"
#include "egrlab/io/report.hpp"
#include "egrlab/io/run_store.hpp"
#include "egrlab/proto/conditions.hpp"
#include "egrlab/proto/http_backend.hpp"
#include "egrlab/proto/runner.hpp"
#include "egrlab/stats/correlation.hpp"
#include "egrlab/stats/kappa.hpp"
#include "egrlab/stats/tests.hpp"

namespace {

namespace fs = std::filesystem;
using namespace egrlab;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct GlobalFlags {
  std::string profile;
  std::string out = "out";
  std::uint64_t seed = 7;
  int jobs = 1;
  std::string corpus = "fixtures/claims_small.jsonl";
  std::string conditions_dir = "conditions";
  std::string hypotheses = "fixtures/hypotheses_desk.json";
  std::string ratings = "fixtures/ratings_synthetic.csv";
  int chains = 1000;
};

// ---------------------------------------------------------------------------
// simulate

struct SimulateFlags {
  int chains = 1000;
  std::uint64_t seed = 7;
  std::string out = "out/simulate";
  std::string spec;
  bool invert_checks = false;
};

int cmd_simulate(const SimulateFlags& flags) {
  fs::create_directories(flags.out);

  if (!flags.spec.empty()) {
    const infodyn::ChainSpec spec = infodyn::load_chain_spec(flags.spec);
    const infodyn::ChainTrajectory traj = infodyn::run_chain(spec.init, spec.steps);
    infodyn::write_trajectory_csv(traj, fs::path(flags.out) / "trajectory.csv");
    std::cout << "chain spec: " << flags.spec << " -> " << traj.rounds() << " rounds, regime "
              << infodyn::to_string(traj.regime) << "\n";
  }

  infodyn::VerificationOptions options;
  options.chains = flags.chains;
  options.seed = flags.seed;
  options.invert_checks = flags.invert_checks;
  const std::vector<infodyn::SuiteReport> reports = infodyn::run_verification_suites(options);

  ordered_json summary;
  bool all_passed = true;
  for (const infodyn::SuiteReport& report : reports) {
    std::cout << report.name << ": " << report.violations << " violations / "
              << report.instances << " instances";
    if (report.strict_candidates > 0) {
      std::cout << " (strict decrease " << report.strict_decreases << "/"
                << report.strict_candidates << ")";
    }
    std::cout << "\n";
    if (!report.passed()) {
      all_passed = false;
      for (const std::uint64_t s : report.offending_seeds) {
        std::cout << "  offending seed: " << s << "\n";
      }
    }
    ordered_json entry;
    entry["instances"] = report.instances;
    entry["violations"] = report.violations;
    entry["offending_seeds"] = report.offending_seeds;
    if (report.strict_candidates > 0) {
      entry["strict_candidates"] = report.strict_candidates;
      entry["strict_decreases"] = report.strict_decreases;
    }
    summary[report.name] = entry;
  }
  std::ofstream out(fs::path(flags.out) / "simulate_summary.json");
  out << summary.dump(2) << "\n";

  std::cout << (all_passed ? "all invariants hold" : "INVARIANT VIOLATIONS FOUND") << "\n";
  return all_passed ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// run

struct RunFlags {
  std::string condition;
  std::string corpus;
  std::string backend = "mock";
  std::uint64_t seed = 7;
  int jobs = 1;
  std::string out = "out/run";
  std::string conditions_dir = "conditions";
  std::string http_base = "http://127.0.0.1:8080";
  std::string http_model = "default-model";
  std::string http_token_env = "EGRLAB_API_TOKEN";
};

std::unique_ptr<proto::AgentBackend> make_backend(const RunFlags& flags) {
  if (flags.backend == "mock" || flags.backend == "scripted-mock" ||
      flags.backend == "mock-dist" || flags.backend == "distributional-mock") {
    return proto::make_mock_backend(flags.backend);
  }
  if (flags.backend == "http" || flags.backend == "http-chat") {
    proto::HttpBackendConfig cfg;
    cfg.base_url = flags.http_base;
    cfg.model = flags.http_model;
    cfg.token_env = flags.http_token_env;
    return std::make_unique<proto::HttpChatBackend>(cfg);
  }
  throw ConfigError("unknown backend: " + flags.backend);
}

int cmd_run(const RunFlags& flags) {
  const proto::ProtocolConfig cfg =
      proto::resolve_condition(flags.condition, flags.conditions_dir);
  const std::vector<io::ClaimRecord> corpus = io::load_claims(flags.corpus);
  const std::unique_ptr<proto::AgentBackend> backend = make_backend(flags);

  const proto::RunArtifact artifact =
      proto::run_condition(cfg, corpus, *backend, flags.seed, flags.jobs, flags.corpus);
  io::save_run(artifact, flags.out);

  std::cout << "condition " << cfg.condition_id << ": " << artifact.manifest.trial_count
            << " trials, " << artifact.manifest.failure_count << " failures -> "
            << flags.out << "\n";
  for (const proto::TrialRecord& trial : artifact.trials) {
    if (trial.failed) {
      std::cout << "  failed trial " << trial.claim_id << ": " << trial.failure_reason
                << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// score

struct ScoreFlags {
  std::vector<std::string> runs;
  std::string corpus;
  std::string out = "out/scores";
  double tau = 0.7;
  bool tau_sweep = false;
  bool score_empty_as_zero = false;
  std::string decomposer = "v1";
  int jobs = 1;
};

struct ScoredBatch {
  std::vector<faith::TrialScore> trials;
  std::vector<faith::ConditionScore> summaries;
};

ScoredBatch score_runs(const std::vector<std::string>& runs, const std::string& corpus_flag,
                       double tau, const std::string& decomposer_name, bool empty_as_zero,
                       int jobs) {
  ScoredBatch batch;
  const std::unique_ptr<faith::Decomposer> decomposer =
      faith::make_decomposer(decomposer_name);
  const faith::TokenOverlapSimilarity sim;
  const faith::ContainmentEntailment gate(tau);
  const faith::ScoringBackends backends{decomposer.get(), &sim, &gate};
  const faith::EmptyPolicy policy =
      empty_as_zero ? faith::EmptyPolicy::kScoreZero : faith::EmptyPolicy::kError;

  for (const std::string& run_dir : runs) {
    const proto::RunArtifact artifact = io::load_run(run_dir);
    const std::string corpus_path =
        corpus_flag.empty() ? artifact.manifest.corpus_path : corpus_flag;
    if (corpus_path.empty()) {
      throw ConfigError("no corpus path given and none recorded in the run manifest");
    }
    const auto corpus = io::claims_by_id(io::load_claims(corpus_path));
    faith::BatchScore scored = faith::score_run(artifact, corpus, backends, policy,
                                                std::nullopt, jobs);
    batch.summaries.push_back(scored.summary);
    for (faith::TrialScore& t : scored.trials) {
      batch.trials.push_back(std::move(t));
    }
  }
  return batch;
}

int cmd_score(const ScoreFlags& flags) {
  fs::create_directories(flags.out);
  const std::vector<double> taus =
      flags.tau_sweep ? std::vector<double>{0.3, 0.5, 0.7, 0.9}
                      : std::vector<double>{flags.tau};
  for (const double tau : taus) {
    const ScoredBatch batch = score_runs(flags.runs, flags.corpus, tau, flags.decomposer,
                                         flags.score_empty_as_zero, flags.jobs);
    const std::string suffix =
        flags.tau_sweep ? "_tau" + io::format_number(tau) : std::string{};
    io::emit_trial_table(batch.trials, fs::path(flags.out) / ("trial_scores" + suffix + ".csv"));
    io::emit_condition_table(batch.summaries, io::ReportFormat::kCsv,
                             fs::path(flags.out) / ("condition_summary" + suffix + ".csv"));
    for (const auto& summary : batch.summaries) {
      std::cout << "tau " << tau << " " << summary.condition_id << ": sfs "
                << io::format_number(summary.sfs) << ", acc "
                << io::format_number(summary.accuracy) << ", failures "
                << summary.failures << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze / report

struct AnalyzeFlags {
  std::vector<std::string> scores;
  std::string ratings;
  std::string hypotheses;
  std::string out = "out/analysis";
  double alpha = 0.05;
  int resamples = 5000;
  std::uint64_t seed = 7;
  std::vector<std::string> formats{"csv", "json"};
};

struct HypothesisSpec {
  std::string id;
  std::string type;  // "paired" | "threshold"
  std::string metric;
  std::string a;
  std::string b;
  std::string direction = "less";
  double scale_b = 1.0;
  double value = 0.0;
};

std::vector<HypothesisSpec> load_hypotheses(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open hypothesis spec: " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("hypothesis spec is not valid JSON: " + std::string(e.what()));
  }
  std::vector<HypothesisSpec> specs;
  for (const auto& h : doc) {
    HypothesisSpec spec;
    spec.id = h.at("id").get<std::string>();
    spec.type = h.value("type", "paired");
    spec.metric = h.at("metric").get<std::string>();
    if (spec.type == "paired") {
      spec.a = h.at("a").get<std::string>();
      spec.b = h.at("b").get<std::string>();
    } else if (spec.type == "threshold") {
      spec.a = h.at("condition").get<std::string>();
      spec.value = h.at("value").get<double>();
      spec.direction = h.value("op", "greater");
    } else {
      throw ConfigError("unknown hypothesis type: " + spec.type);
    }
    spec.direction = h.value("direction", spec.direction);
    spec.scale_b = h.value("scale_b", 1.0);
    specs.push_back(std::move(spec));
  }
  return specs;
}

double metric_of(const faith::TrialScore& t, const std::string& metric) {
  if (metric == "sfs") return t.sfs;
  if (metric == "eur") return t.eur;
  if (metric == "rcva") return t.rcva.value_or(0.0);
  if (metric == "emc") return t.emc.value_or(0.0);
  if (metric == "acc") return t.correct ? 1.0 : 0.0;
  throw ConfigError("unknown metric: " + metric);
}

// One-sided p from the two-sided signed-rank test, by the symmetry of the
// null distribution of W+.
double one_sided_p(const stats::TestResult& two_sided, double observed_direction,
                   bool want_greater) {
  const bool matches = want_greater ? observed_direction > 0 : observed_direction < 0;
  if (observed_direction == 0.0) {
    return 0.5;
  }
  return matches ? two_sided.p_value / 2.0 : 1.0 - two_sided.p_value / 2.0;
}

std::vector<io::HypothesisRow> evaluate_hypotheses(
    const std::vector<HypothesisSpec>& specs,
    const std::vector<faith::TrialScore>& trials, double alpha, int resamples,
    std::uint64_t seed) {
  // Index metric values by (condition, trace).
  std::map<std::pair<std::string, std::string>, const faith::TrialScore*> by_key;
  for (const faith::TrialScore& t : trials) {
    by_key[{t.condition_id, t.claim_id}] = &t;
  }
  std::set<std::string> traces;
  for (const faith::TrialScore& t : trials) {
    traces.insert(t.claim_id);
  }

  std::vector<io::HypothesisRow> rows;
  std::vector<double> family_ps;
  for (const HypothesisSpec& spec : specs) {
    io::HypothesisRow row;
    row.id = spec.id;
    row.metric = spec.metric;
    row.condition_a = spec.a;
    row.condition_b = spec.type == "threshold"
                          ? io::format_number(spec.value) + " (threshold)"
                          : spec.b;

    stats::PairedSamples samples;
    for (const std::string& trace : traces) {
      const auto a = by_key.find({spec.a, trace});
      if (a == by_key.end()) {
        continue;
      }
      if (spec.type == "paired") {
        const auto b = by_key.find({spec.b, trace});
        if (b == by_key.end()) {
          continue;
        }
        samples.x.push_back(metric_of(*a->second, spec.metric));
        samples.y.push_back(spec.scale_b * metric_of(*b->second, spec.metric));
      } else {
        samples.x.push_back(metric_of(*a->second, spec.metric));
        samples.y.push_back(spec.value);
      }
      samples.ids.push_back(trace);
    }
    if (samples.x.empty()) {
      throw ConfigError("hypothesis " + spec.id + " matched no paired trials");
    }
    row.n = static_cast<int>(samples.x.size());

    const stats::TestResult two_sided = stats::wilcoxon_signed_rank(samples);
    row.statistic = two_sided.statistic;
    double mean_diff = 0.0;
    for (std::size_t i = 0; i < samples.x.size(); ++i) {
      mean_diff += samples.x[i] - samples.y[i];
    }
    mean_diff /= static_cast<double>(samples.x.size());
    row.p = one_sided_p(two_sided, mean_diff, spec.direction == "greater");

    try {
      row.effect_size = stats::cohens_d_paired(samples);
    } catch (const Error&) {
      row.effect_size = 0.0;
    }
    std::vector<double> diffs;
    for (std::size_t i = 0; i < samples.x.size(); ++i) {
      diffs.push_back(samples.x[i] - samples.y[i]);
    }
    try {
      const auto ci = stats::bootstrap_ci(
          diffs,
          [](const std::vector<double>& v) {
            double s = 0.0;
            for (const double x : v) {
              s += x;
            }
            return s / static_cast<double>(v.size());
          },
          resamples, rng::mix(seed, spec.id));
      row.ci_low = ci.first;
      row.ci_high = ci.second;
    } catch (const Error&) {
      row.ci_low = row.ci_high = mean_diff;
    }
    family_ps.push_back(row.p);
    rows.push_back(std::move(row));
  }

  const std::vector<stats::HolmDecision> decisions = stats::holm_bonferroni(family_ps, alpha);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].holm_threshold = decisions[i].threshold;
    rows[i].reject = decisions[i].reject;
  }
  return rows;
}

struct AnalysisOutputs {
  std::vector<io::HypothesisRow> hypotheses;
  std::vector<io::CorrelationRow> correlations;
  bool have_ratings = false;
  stats::FleissResult fleiss_q1{0, 0, 0, 0, 0};
  stats::FleissResult fleiss_q2{0, 0, 0, 0, 0};
  stats::KappaMatrix kappa_q2;
};

AnalysisOutputs run_analysis(const AnalyzeFlags& flags) {
  AnalysisOutputs outputs;

  std::vector<faith::TrialScore> trials;
  for (const std::string& path : flags.scores) {
    for (faith::TrialScore& t : io::read_trial_table(path)) {
      trials.push_back(std::move(t));
    }
  }

  if (!flags.hypotheses.empty()) {
    const std::vector<HypothesisSpec> specs = load_hypotheses(flags.hypotheses);
    outputs.hypotheses = evaluate_hypotheses(specs, trials, flags.alpha, flags.resamples,
                                             flags.seed);
  }

  if (!trials.empty()) {
    std::vector<double> sfs;
    std::vector<double> eur;
    std::vector<double> length;
    for (const faith::TrialScore& t : trials) {
      sfs.push_back(t.sfs);
      eur.push_back(t.eur);
      length.push_back(static_cast<double>(t.claim_count));
    }
    const auto add_row = [&](const std::string& name, const std::vector<double>& x,
                             const std::vector<double>& y) {
      try {
        outputs.correlations.push_back(
            {name, stats::spearman(x, y), stats::pearson(x, y),
             static_cast<int>(x.size())});
      } catch (const Error&) {
        // zero-variance columns have no defined correlation; skip the row
      }
    };
    add_row("sfs_vs_eur", sfs, eur);
    add_row("sfs_vs_claim_count", sfs, length);
  }

  if (!flags.ratings.empty()) {
    const io::RatingData ratings = io::load_ratings(flags.ratings);
    outputs.have_ratings = true;
    outputs.fleiss_q1 = stats::fleiss_kappa(ratings.q1);
    outputs.fleiss_q2 = stats::fleiss_kappa(ratings.q2);
    outputs.kappa_q2 = stats::kappa_matrix(ratings.q2, stats::KappaWeighting::kNone);
  }
  return outputs;
}

void emit_analysis(const AnalysisOutputs& outputs, const std::string& out_dir,
                   const std::vector<std::string>& formats) {
  fs::create_directories(out_dir);
  for (const std::string& format_name : formats) {
    const io::ReportFormat format = io::report_format_from_string(format_name);
    const std::string ext = io::report_format_extension(format);
    if (!outputs.hypotheses.empty()) {
      io::emit_hypothesis_table(outputs.hypotheses, format,
                                fs::path(out_dir) / ("hypothesis_table" + ext));
    }
    io::emit_correlation_table(outputs.correlations, format,
                               fs::path(out_dir) / ("correlation_table" + ext));
    if (outputs.have_ratings) {
      io::emit_kappa_table(outputs.kappa_q2, format,
                           fs::path(out_dir) / ("kappa_q2_matrix" + ext));
    }
  }
  if (outputs.have_ratings) {
    ordered_json agreement;
    agreement["fleiss_q1"] = {{"kappa", outputs.fleiss_q1.kappa},
                              {"p_bar", outputs.fleiss_q1.p_bar},
                              {"p_e", outputs.fleiss_q1.p_e},
                              {"items_used", outputs.fleiss_q1.items_used},
                              {"items_dropped", outputs.fleiss_q1.items_dropped}};
    agreement["fleiss_q2"] = {{"kappa", outputs.fleiss_q2.kappa},
                              {"p_bar", outputs.fleiss_q2.p_bar},
                              {"p_e", outputs.fleiss_q2.p_e},
                              {"items_used", outputs.fleiss_q2.items_used},
                              {"items_dropped", outputs.fleiss_q2.items_dropped}};
    std::ofstream out(fs::path(out_dir) / "agreement_summary.json");
    out << agreement.dump(2) << "\n";
  }
}

int cmd_analyze(const AnalyzeFlags& flags) {
  const AnalysisOutputs outputs = run_analysis(flags);
  emit_analysis(outputs, flags.out, flags.formats);
  for (const io::HypothesisRow& row : outputs.hypotheses) {
    std::cout << row.id << ": p=" << io::format_number(row.p)
              << " d=" << io::format_number(row.effect_size)
              << (row.reject ? " [reject]" : " [retain]") << "\n";
  }
  return kExitOk;
}

struct ReportFlags {
  std::vector<std::string> scores;
  std::string ratings;
  std::string hypotheses;
  std::string out = "out/report";
  std::vector<std::string> formats{"csv", "json", "md"};
  double alpha = 0.05;
  int resamples = 5000;
  std::uint64_t seed = 7;
};

int cmd_report(const ReportFlags& flags) {
  fs::create_directories(flags.out);

  // Condition table straight from the per-trial scores.
  std::vector<faith::TrialScore> trials;
  for (const std::string& path : flags.scores) {
    for (faith::TrialScore& t : io::read_trial_table(path)) {
      trials.push_back(std::move(t));
    }
  }
  std::map<std::string, std::vector<const faith::TrialScore*>> by_condition;
  for (const faith::TrialScore& t : trials) {
    by_condition[t.condition_id].push_back(&t);
  }
  std::vector<faith::ConditionScore> conditions;
  for (const auto& [condition_id, rows] : by_condition) {
    faith::ConditionScore summary;
    summary.condition_id = condition_id;
    summary.trials = static_cast<int>(rows.size());
    double rcva_sum = 0.0;
    int rcva_n = 0;
    double emc_sum = 0.0;
    int emc_n = 0;
    for (const faith::TrialScore* t : rows) {
      summary.accuracy += t->correct ? 1.0 : 0.0;
      summary.sfs += t->sfs;
      summary.eur += t->eur;
      if (t->rcva) {
        rcva_sum += *t->rcva;
        ++rcva_n;
      }
      if (t->emc) {
        emc_sum += *t->emc;
        ++emc_n;
      }
    }
    summary.accuracy /= rows.size();
    summary.sfs /= rows.size();
    summary.eur /= rows.size();
    if (rcva_n > 0) {
      summary.rcva = rcva_sum / rcva_n;
    }
    if (emc_n > 0) {
      summary.emc = emc_sum / emc_n;
    }
    conditions.push_back(std::move(summary));
  }

  AnalyzeFlags analyze;
  analyze.scores = flags.scores;
  analyze.ratings = flags.ratings;
  analyze.hypotheses = flags.hypotheses;
  analyze.alpha = flags.alpha;
  analyze.resamples = flags.resamples;
  analyze.seed = flags.seed;
  const AnalysisOutputs outputs = run_analysis(analyze);

  for (const std::string& format_name : flags.formats) {
    const io::ReportFormat format = io::report_format_from_string(format_name);
    const std::string ext = io::report_format_extension(format);
    io::emit_condition_table(conditions, format,
                             fs::path(flags.out) / ("condition_table" + ext));
    if (!outputs.hypotheses.empty()) {
      io::emit_hypothesis_table(outputs.hypotheses, format,
                                fs::path(flags.out) / ("hypothesis_table" + ext));
    }
    if (outputs.have_ratings) {
      io::emit_kappa_table(outputs.kappa_q2, format,
                           fs::path(flags.out) / ("kappa_q2_matrix" + ext));
    }
    io::emit_correlation_table(outputs.correlations, format,
                               fs::path(flags.out) / ("correlation_table" + ext));
  }
  std::cout << "report written to " << flags.out << " (" << conditions.size()
            << " conditions)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// desk profile: the full offline pipeline over the shipped fixtures.

int run_desk_profile(const GlobalFlags& flags) {
  const fs::path out(flags.out);
  fs::create_directories(out);

  SimulateFlags simulate;
  simulate.chains = flags.chains;
  simulate.seed = flags.seed;
  simulate.out = (out / "simulate").string();
  const int simulate_status = cmd_simulate(simulate);
  if (simulate_status != kExitOk) {
    return simulate_status;
  }

  const std::vector<std::string> ids = proto::list_conditions(flags.conditions_dir);
  std::vector<std::string> run_dirs;
  for (const std::string& id : ids) {
    RunFlags run;
    run.condition = id;
    run.corpus = flags.corpus;
    run.backend = "mock";
    run.seed = flags.seed;
    run.jobs = flags.jobs;
    run.conditions_dir = flags.conditions_dir;
    run.out = (out / "runs" / id).string();
    const int status = cmd_run(run);
    if (status != kExitOk) {
      return status;
    }
    run_dirs.push_back(run.out);
  }

  ScoreFlags score;
  score.runs = run_dirs;
  score.corpus = flags.corpus;
  score.out = (out / "scores").string();
  score.score_empty_as_zero = true;
  score.jobs = flags.jobs;
  int status = cmd_score(score);
  if (status != kExitOk) {
    return status;
  }

  ScoreFlags sweep = score;
  sweep.out = (out / "scores_sweep").string();
  sweep.tau_sweep = true;
  status = cmd_score(sweep);
  if (status != kExitOk) {
    return status;
  }

  ScoreFlags alt = score;
  alt.out = (out / "scores_v2").string();
  alt.decomposer = "v2";
  status = cmd_score(alt);
  if (status != kExitOk) {
    return status;
  }

  AnalyzeFlags analyze;
  analyze.scores = {(out / "scores" / "trial_scores.csv").string()};
  analyze.ratings = flags.ratings;
  analyze.hypotheses = flags.hypotheses;
  analyze.out = (out / "analysis").string();
  analyze.seed = flags.seed;
  status = cmd_analyze(analyze);
  if (status != kExitOk) {
    return status;
  }

  ReportFlags report;
  report.scores = analyze.scores;
  report.ratings = flags.ratings;
  report.hypotheses = flags.hypotheses;
  report.out = (out / "report").string();
  report.seed = flags.seed;
  return cmd_report(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evidence-grounded reasoning laboratory"};
  app.require_subcommand(0, 1);

  GlobalFlags global;
  app.add_option("--profile", global.profile, "named pipeline profile (desk)");
  app.add_option("--out", global.out, "output directory for the profile run");
  app.add_option("--seed", global.seed, "master seed for the profile run");
  app.add_option("--jobs", global.jobs, "worker pool size");
  app.add_option("--corpus", global.corpus, "claim corpus (JSONL)");
  app.add_option("--conditions-dir", global.conditions_dir, "condition config directory");
  app.add_option("--hypotheses", global.hypotheses, "hypothesis spec (JSON)");
  app.add_option("--ratings", global.ratings, "ratings file (CSV)");
  app.add_option("--chains", global.chains, "random chains per verification suite");

  SimulateFlags simulate;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "verify the information-flow invariants");
  simulate_cmd->add_option("--chains", simulate.chains, "random chains per suite");
  simulate_cmd->add_option("--seed", simulate.seed, "suite seed");
  simulate_cmd->add_option("--out", simulate.out, "output directory");
  simulate_cmd->add_option("--spec", simulate.spec, "declarative chain spec (JSON)");
  simulate_cmd->add_flag("--invert-checks", simulate.invert_checks,
                         "self-test: invert invariant comparisons (expected to fail)");

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "run one condition over a corpus");
  run_cmd->add_option("--condition", run.condition, "condition id or config path")
      ->required();
  run_cmd->add_option("--corpus", run.corpus, "claim corpus (JSONL)")->required();
  run_cmd->add_option("--backend", run.backend, "mock | mock-dist | http");
  run_cmd->add_option("--seed", run.seed, "run seed");
  run_cmd->add_option("--jobs", run.jobs, "worker pool size");
  run_cmd->add_option("--out", run.out, "run artifact directory");
  run_cmd->add_option("--conditions-dir", run.conditions_dir, "condition config directory");
  run_cmd->add_option("--http-base", run.http_base, "chat endpoint base URL");
  run_cmd->add_option("--http-model", run.http_model, "chat model name");
  run_cmd->add_option("--http-token-env", run.http_token_env,
                      "environment variable holding the API token");

  ScoreFlags score;
  CLI::App* score_cmd = app.add_subcommand("score", "score run artifacts");
  score_cmd->add_option("--run", score.runs, "run directory (repeatable)")->required();
  score_cmd->add_option("--corpus", score.corpus,
                        "claim corpus (defaults to the run manifest's path)");
  score_cmd->add_option("--out", score.out, "output directory");
  score_cmd->add_option("--tau", score.tau, "entailment gate threshold");
  score_cmd->add_flag("--tau-sweep", score.tau_sweep, "score at tau in {0.3,0.5,0.7,0.9}");
  score_cmd->add_flag("--score-empty-as-zero", score.score_empty_as_zero,
                      "score empty decompositions as zero instead of failing them");
  score_cmd->add_option("--decomposer", score.decomposer, "v1 | v2");
  score_cmd->add_option("--jobs", score.jobs, "worker pool size");

  AnalyzeFlags analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "statistical analysis of scores");
  analyze_cmd->add_option("--scores", analyze.scores, "trial score CSV (repeatable)")
      ->required();
  analyze_cmd->add_option("--ratings", analyze.ratings, "ratings CSV");
  analyze_cmd->add_option("--hypotheses", analyze.hypotheses, "hypothesis spec (JSON)");
  analyze_cmd->add_option("--out", analyze.out, "output directory");
  analyze_cmd->add_option("--alpha", analyze.alpha, "family-wise error rate");
  analyze_cmd->add_option("--resamples", analyze.resamples, "bootstrap resamples");
  analyze_cmd->add_option("--seed", analyze.seed, "bootstrap seed");
  analyze_cmd->add_option("--formats", analyze.formats, "csv | json | md (repeatable)");

  ReportFlags report;
  CLI::App* report_cmd = app.add_subcommand("report", "emit condition/hypothesis tables");
  report_cmd->add_option("--scores", report.scores, "trial score CSV (repeatable)")
      ->required();
  report_cmd->add_option("--ratings", report.ratings, "ratings CSV");
  report_cmd->add_option("--hypotheses", report.hypotheses, "hypothesis spec (JSON)");
  report_cmd->add_option("--out", report.out, "output directory");
  report_cmd->add_option("--formats", report.formats, "csv | json | md (repeatable)");
  report_cmd->add_option("--alpha", report.alpha, "family-wise error rate");
  report_cmd->add_option("--resamples", report.resamples, "bootstrap resamples");
  report_cmd->add_option("--seed", report.seed, "bootstrap seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate_cmd->parsed()) {
      return cmd_simulate(simulate);
    }
    if (run_cmd->parsed()) {
      return cmd_run(run);
    }
    if (score_cmd->parsed()) {
      return cmd_score(score);
    }
    if (analyze_cmd->parsed()) {
      return cmd_analyze(analyze);
    }
    if (report_cmd->parsed()) {
      return cmd_report(report);
    }
    if (global.profile == "desk") {
      return run_desk_profile(global);
    }
    if (!global.profile.empty()) {
      std::cerr << "unknown profile: " << global.profile << "\n";
      return kExitConfig;
    }
    std::cout << app.help() << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitFailure;
  }
}
