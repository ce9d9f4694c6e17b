// Acceptance suite: verifies every exit criterion end-to-end on the shipped
// fixtures and prints one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "egrlab/faith/batch.hpp"
#include "egrlab/faith/diagnostics.hpp"
#include "egrlab/faith/trap.hpp"
#include "egrlab/infodyn/concentration.hpp"
#include "egrlab/infodyn/verification.hpp"
#include "egrlab/io/claims.hpp"
#include "egrlab/io/run_store.hpp"
#include "egrlab/proto/conditions.hpp"
#include "egrlab/proto/runner.hpp"
#include "egrlab/stats/correlation.hpp"
#include "egrlab/stats/kappa.hpp"
#include "egrlab/stats/tests.hpp"

namespace {

namespace fs = std::filesystem;
using namespace egrlab;
using Clock = std::chrono::steady_clock;

struct Outcome {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// In-process desk pipeline shared by criteria 8-10.

struct DeskScores {
  // condition -> mean scores at the default gate threshold (v1 decomposer)
  std::map<std::string, faith::ConditionScore> v1;
  std::map<std::string, faith::ConditionScore> v2;
  std::map<double, std::map<std::string, double>> sweep_sfs;  // tau -> condition -> sfs
  std::map<std::string, proto::RunArtifact> artifacts;
  std::map<std::string, io::ClaimRecord> corpus;
};

DeskScores run_desk_pipeline(const fs::path& fixtures, const fs::path& conditions,
                             std::uint64_t seed) {
  DeskScores desk;
  const std::vector<io::ClaimRecord> corpus = io::load_claims(fixtures / "claims_small.jsonl");
  desk.corpus = io::claims_by_id(corpus);

  proto::ScriptedMock backend;
  for (const std::string& id : proto::list_conditions(conditions)) {
    const proto::ProtocolConfig cfg = proto::resolve_condition(id, conditions);
    desk.artifacts.emplace(id, proto::run_condition(cfg, corpus, backend, seed, 2));
  }

  const faith::TokenOverlapSimilarity sim;
  const faith::RuleDecomposerV1 d1;
  const faith::RuleDecomposerV2 d2;
  for (const double tau : {0.3, 0.5, 0.7, 0.9}) {
    const faith::ContainmentEntailment gate(tau);
    const faith::ScoringBackends backends{&d1, &sim, &gate};
    for (const auto& [id, artifact] : desk.artifacts) {
      const faith::BatchScore scored = faith::score_run(
          artifact, desk.corpus, backends, faith::EmptyPolicy::kScoreZero, std::nullopt, 2);
      desk.sweep_sfs[tau][id] = scored.summary.sfs;
      if (tau == 0.7) {
        desk.v1[id] = scored.summary;
      }
    }
  }
  const faith::ContainmentEntailment gate07(0.7);
  const faith::ScoringBackends alt{&d2, &sim, &gate07};
  for (const auto& [id, artifact] : desk.artifacts) {
    desk.v2[id] = faith::score_run(artifact, desk.corpus, alt,
                                   faith::EmptyPolicy::kScoreZero, std::nullopt, 2)
                      .summary;
  }
  return desk;
}

std::vector<double> condition_ranks(const std::map<std::string, double>& values) {
  std::vector<std::string> ids;
  std::vector<double> v;
  for (const auto& [id, val] : values) {
    ids.push_back(id);
    v.push_back(val);
  }
  return stats::average_ranks(v);
}

// Independent sign-assignment oracle for the Wilcoxon check.
double wilcoxon_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) {
      d.push_back(x[i] - y[i]);
    }
  }
  const std::size_t n = d.size();
  if (n == 0) {
    return 1.0;
  }
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    // average rank: 1 + #smaller + (#equal - 1) / 2
    int smaller = 0;
    int equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(d[j]) < std::abs(d[i])) {
        ++smaller;
      } else if (std::abs(d[j]) == std::abs(d[i])) {
        ++equal;
      }
    }
    ranks[i] = smaller + 1 + 0.5 * (equal - 1);
  }
  double w_obs = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += ranks[i];
    if (d[i] > 0) {
      w_obs += ranks[i];
    }
  }
  const double hi = std::max(w_obs, total - w_obs);
  const double lo = total - hi;
  std::uint64_t extreme = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        w += ranks[i];
      }
    }
    if (w >= hi - 1e-12 || w <= lo + 1e-12) {
      ++extreme;
    }
  }
  return std::min(1.0, static_cast<double>(extreme) / static_cast<double>(1ULL << n));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::string fixtures = "fixtures";
  std::string conditions = "conditions";
  std::string cli;
  std::string scratch = "acceptance_scratch";
  app.add_option("--fixtures", fixtures);
  app.add_option("--conditions", conditions);
  app.add_option("--cli", cli, "path to the egrlab binary (for the determinism check)");
  app.add_option("--scratch", scratch);
  CLI11_PARSE(app, argc, argv);

  std::vector<Outcome> outcomes;
  const auto record = [&](int id, const std::string& name, bool passed,
                          const std::string& detail) {
    outcomes.push_back({id, name, passed, detail});
  };

  // --- Criteria 1-7: the information-flow verification suites. ---
  try {
    const auto start = Clock::now();
    infodyn::VerificationOptions options;
    options.chains = 1000;
    options.seed = 7;
    const std::vector<infodyn::SuiteReport> reports =
        infodyn::run_verification_suites(options);
    const double elapsed = seconds_since(start);
    std::map<std::string, infodyn::SuiteReport> by_name;
    for (const infodyn::SuiteReport& r : reports) {
      by_name[r.name] = r;
    }

    const infodyn::SuiteReport& dpi = by_name.at("closed-chain-dpi");
    const double strict_rate = dpi.strict_candidates > 0
                                   ? static_cast<double>(dpi.strict_decreases) /
                                         dpi.strict_candidates
                                   : 0.0;
    record(1, "closed-chain DPI with strict decrease",
           dpi.violations == 0 && strict_rate >= 0.99 && elapsed < 60.0,
           std::to_string(dpi.instances) + " chains, " + std::to_string(dpi.violations) +
               " violations, strict " + fmt(100.0 * strict_rate) + "%, " + fmt(elapsed) +
               "s");

    const infodyn::SuiteReport& vote = by_name.at("vote-floor");
    record(2, "vote-aggregation floor", vote.violations == 0,
           std::to_string(vote.instances) + " chains, " + std::to_string(vote.violations) +
               " violations");

    const infodyn::SuiteReport& open = by_name.at("open-chain-recovery");
    record(3, "open-system recovery", open.violations == 0,
           std::to_string(open.instances) + " chains, " + std::to_string(open.violations) +
               " violations; evidence copy reaches H(E)");

    // KL gap: suite bound check plus injective equality.
    const infodyn::SuiteReport& klgap = by_name.at("kl-gap-bound");
    bool injective_equal = true;
    {
      rng::Engine eng(123);
      for (int i = 0; i < 200; ++i) {
        const Eigen::Index ne = 2 + static_cast<Eigen::Index>(eng.below(7));
        const Eigen::Index ns = 2 + static_cast<Eigen::Index>(eng.below(7));
        const infodyn::DiscreteJoint j = infodyn::random_joint(ne, ns, eng);
        // Random permutation channel: injective aggregation.
        Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(ns, ns);
        std::vector<Eigen::Index> perm(static_cast<std::size_t>(ns));
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = perm.size(); k > 1; --k) {
          std::swap(perm[k - 1], perm[eng.below(k)]);
        }
        for (Eigen::Index x = 0; x < ns; ++x) {
          rows(x, perm[static_cast<std::size_t>(x)]) = 1.0;
        }
        const infodyn::KlGapResult gap = infodyn::kl_gap(j, infodyn::Channel(rows));
        if (std::abs(gap.gap - gap.lower_bound) > 1e-9 || std::abs(gap.gap) > 1e-9) {
          injective_equal = false;
        }
      }
    }
    record(4, "per-step KL gap dominates its bound",
           klgap.violations == 0 && injective_equal,
           std::to_string(klgap.instances) +
               " random pairs; equality on 200 injective channels");

    const infodyn::SuiteReport& fdiv = by_name.at("f-divergence-dpi");
    record(5, "f-divergence DPI family (kl, tv, chi2, hellinger)", fdiv.violations == 0,
           std::to_string(fdiv.instances) + " instances; kl generator matches MI");

    const double h1 = infodyn::hoeffding_bound(300, 0.10);
    const double h2 = infodyn::hoeffding_bound(300, 0.05);
    const infodyn::SuiteReport& conc = by_name.at("hoeffding-concentration");
    record(6, "concentration bound and design points",
           h1 >= 4.9e-3 && h1 <= 5.0e-3 && h2 >= 0.44 && h2 <= 0.45 &&
               conc.violations == 0,
           "bound(300,0.10)=" + fmt(h1) + ", bound(300,0.05)=" + fmt(h2) +
               ", Monte Carlo under bound on " + std::to_string(conc.instances) +
               " settings");

    const infodyn::SuiteReport& stop = by_name.at("optional-stopping");
    record(7, "optional stopping preserves recovery", stop.violations == 0,
           std::to_string(stop.instances) + " stopping rules, 1000 trials each");
  } catch (const std::exception& e) {
    for (int id = 1; id <= 7; ++id) {
      record(id, "verification suites", false, e.what());
    }
  }

  // --- Criteria 8-10: SFS axioms, threshold sweep, three-tier structure. ---
  try {
    const auto start = Clock::now();
    const DeskScores desk = run_desk_pipeline(fixtures, conditions, 7);

    // A2: rankings identical across decomposers.
    std::map<std::string, double> v1_sfs;
    std::map<std::string, double> v2_sfs;
    for (const auto& [id, s] : desk.v1) {
      v1_sfs[id] = s.sfs;
    }
    for (const auto& [id, s] : desk.v2) {
      v2_sfs[id] = s.sfs;
    }
    const double rho_decomposers =
        stats::pearson(condition_ranks(v1_sfs), condition_ranks(v2_sfs));
    const bool a2 = std::abs(rho_decomposers - 1.0) <= 1e-12;

    // A3-A7 on concrete fixtures.
    const faith::TokenOverlapSimilarity sim;
    const faith::ContainmentEntailment gate(0.7);
    const faith::RuleDecomposerV1 d1;
    const faith::ScoringBackends backends{&d1, &sim, &gate};
    const faith::EvidenceSet evidence{
        "a", {{"p1", "Aspirin lowers fever in adults."},
              {"p2", "Prostaglandin synthesis drives fever onset."}}};
    const faith::EvidenceSet other_evidence{
        "a", {{"q1", "Volcanic basalt cools into hexagonal columns."}}};
    const std::string base =
        "Aspirin lowers fever in adults. Quartz sand sparkles brightly near dunes.";

    const faith::SfsReport r_base = faith::sfs(base, evidence, backends);
    const bool a3 = std::abs(faith::sfs(base, other_evidence, backends).sfs - r_base.sfs) >
                    1e-12;

    const faith::SfsReport r_plus = faith::sfs(
        base + " Prostaglandin synthesis drives fever onset.", evidence, backends);
    double mass_base = 0.0;
    for (const auto& cs : r_base.claim_scores) {
      mass_base += cs.support_mass;
    }
    double mass_plus = 0.0;
    for (const auto& cs : r_plus.claim_scores) {
      mass_plus += cs.support_mass;
    }
    const bool a4 = mass_plus >= mass_base - 1e-12;

    const faith::SfsReport r_fab = faith::sfs(
        base + " Granite cliffs erode slowly under rainfall.", evidence, backends);
    const bool a5 = r_fab.sfs < r_base.sfs - 1e-12;

    const bool a6 = faith::sfs_report_to_json(faith::sfs(base, evidence, backends)) ==
                    faith::sfs_report_to_json(faith::sfs(base, evidence, backends));

    const faith::SfsReport strong =
        faith::sfs("Aspirin lowers fever in adults.", evidence, backends,
                   faith::EmptyPolicy::kError, std::nullopt, faith::Verdict::kSupports);
    const faith::SfsReport weak =
        faith::sfs(base, evidence, backends, faith::EmptyPolicy::kError, std::nullopt,
                   faith::Verdict::kSupports);
    const bool a7 = std::abs(strong.sfs - weak.sfs) > 0.05;

    record(8, "SFS axioms A2-A7", a2 && a3 && a4 && a5 && a6 && a7,
           "decomposer-rank rho=" + fmt(rho_decomposers) + ", A3 " +
               (a3 ? "ok" : "FAIL") + ", A4 " + (a4 ? "ok" : "FAIL") + ", A5 " +
               (a5 ? "ok" : "FAIL") + ", A6 " + (a6 ? "ok" : "FAIL") + ", A7 " +
               (a7 ? "ok" : "FAIL"));

    // Criterion 9: identical rankings across the gate-threshold sweep.
    bool sweep_identical = true;
    const std::vector<double> base_ranks = condition_ranks(desk.sweep_sfs.at(0.7));
    for (const double tau : {0.3, 0.5, 0.9}) {
      if (condition_ranks(desk.sweep_sfs.at(tau)) != base_ranks) {
        sweep_identical = false;
      }
    }
    record(9, "rankings identical across tau in {0.3,0.5,0.7,0.9}", sweep_identical,
           "four thresholds, 16 conditions");

    // Criterion 10: the three-tier structural reproduction.
    const faith::ConditionScore& c1 = desk.v1.at("C1");
    const faith::ConditionScore& c8 = desk.v1.at("C8");
    const faith::ConditionScore& c13 = desk.v1.at("C13");
    const faith::ConditionScore& c15 = desk.v1.at("C15");
    const bool ordering = c8.sfs > c1.sfs && c1.sfs > c13.sfs && c13.sfs > c15.sfs &&
                          c15.sfs <= 0.01;
    const bool trap =
        faith::detect_trap(c1.accuracy, c1.sfs, c13.accuracy, c13.sfs, 0.08, 0.10);
    const bool tiers =
        faith::classify_tier(c1.accuracy, c1.sfs, c13.accuracy, c13.sfs) ==
            faith::DegradationTier::kTrapProper &&
        faith::classify_tier(c1.accuracy, c1.sfs, c15.accuracy, c15.sfs) ==
            faith::DegradationTier::kElimination;

    bool egsr_monotone = true;
    const faith::TokenOverlapSimilarity sim2;
    const faith::ContainmentEntailment gate2(0.7);
    const faith::ScoringBackends traj_backends{&d1, &sim2, &gate2};
    for (const proto::TrialRecord& trial : desk.artifacts.at("C8").trials) {
      const faith::FaithfulnessTrajectory traj = faith::trial_trajectory(
          trial, desk.corpus.at(trial.claim_id).evidence_set(), traj_backends);
      for (std::size_t t = 1; t < traj.per_round_sfs.size(); ++t) {
        if (traj.per_round_sfs[t] < traj.per_round_sfs[t - 1] - 1e-12) {
          egsr_monotone = false;
        }
      }
    }
    const double elapsed = seconds_since(start);
    record(10, "three-tier reproduction on the mock suite",
           ordering && trap && tiers && egsr_monotone && elapsed < 300.0,
           "sfs C8=" + fmt(c8.sfs) + " > C1=" + fmt(c1.sfs) + " > C13=" + fmt(c13.sfs) +
               " > C15=" + fmt(c15.sfs) + "; trap " + (trap ? "yes" : "NO") +
               "; tiers " + (tiers ? "ok" : "FAIL") + "; EGSR monotone " +
               (egsr_monotone ? "yes" : "NO") + "; " + fmt(elapsed) + "s");
  } catch (const std::exception& e) {
    record(8, "SFS axioms A2-A7", false, e.what());
    record(9, "threshold sweep", false, e.what());
    record(10, "three-tier reproduction", false, e.what());
  }

  // --- Criterion 11: statistics oracles. ---
  try {
    bool wilcoxon_ok = true;
    rng::Engine eng(99);
    for (int instance = 0; instance < 200; ++instance) {
      const int n = 2 + static_cast<int>(eng.below(9));
      stats::PairedSamples s;
      for (int i = 0; i < n; ++i) {
        s.x.push_back(std::round(eng.uniform(-3.0, 3.0)));
        s.y.push_back(std::round(eng.uniform(-3.0, 3.0)));
      }
      const double expected = wilcoxon_oracle(s.x, s.y);
      if (std::abs(stats::wilcoxon_signed_rank(s).p_value - expected) > 1e-12) {
        wilcoxon_ok = false;
      }
    }

    const double reported = stats::fleiss_kappa_from_aggregates(0.222, 0.217);
    const bool fleiss_ok = std::abs(reported - 0.006) < 1e-3;

    bool independent_ok = true;
    {
      stats::RatingMatrix coins;
      coins.rater_ids = {"r1", "r2", "r3"};
      coins.num_categories = 5;
      coins.scale_name = "likert-5";
      rng::Engine coin_eng(55);
      for (int i = 0; i < 1000; ++i) {
        coins.item_ids.push_back("i" + std::to_string(i));
        coins.cells.push_back({static_cast<int>(coin_eng.below(5)),
                               static_cast<int>(coin_eng.below(5)),
                               static_cast<int>(coin_eng.below(5))});
      }
      independent_ok = std::abs(stats::fleiss_kappa(coins).kappa) < 0.05;
    }

    bool holm_ok = true;
    {
      const auto one = stats::holm_bonferroni({0.02});
      holm_ok &= std::abs(one[0].threshold - 0.05) < 1e-12;
      const auto four = stats::holm_bonferroni({0.001, 0.004, 0.03, 0.2});
      const double expected4[] = {0.05 / 4, 0.05 / 3, 0.05 / 2, 0.05};
      for (int i = 0; i < 4; ++i) {
        holm_ok &= std::abs(four[i].threshold - expected4[i]) < 1e-12;
      }
      holm_ok &= four[0].reject && four[1].reject && !four[2].reject && !four[3].reject;
      std::vector<double> eight{0.0001, 0.001, 0.002, 0.004, 0.006, 0.008, 0.03, 0.6};
      const auto holm8 = stats::holm_bonferroni(eight);
      holm_ok &= std::abs(holm8[0].threshold - 0.05 / 8) < 1e-12;
    }

    record(11, "statistics oracles",
           wilcoxon_ok && fleiss_ok && independent_ok && holm_ok,
           std::string("wilcoxon exact==enumeration (200, n<=10) ") +
               (wilcoxon_ok ? "ok" : "FAIL") + "; fleiss aggregates -> " + fmt(reported) +
               "; independent kappa " + (independent_ok ? "ok" : "FAIL") +
               "; holm thresholds " + (holm_ok ? "ok" : "FAIL"));
  } catch (const std::exception& e) {
    record(11, "statistics oracles", false, e.what());
  }

  // --- Criterion 12: end-to-end determinism of the desk profile. ---
  try {
    if (cli.empty()) {
      record(12, "desk profile determinism", false, "no --cli path provided");
    } else {
      const fs::path scratch_dir(scratch);
      fs::remove_all(scratch_dir);
      fs::create_directories(scratch_dir);
      const fs::path out_a = scratch_dir / "desk_a";
      const fs::path out_b = scratch_dir / "desk_b";
      const std::string common = std::string(" --seed 7 --chains 200") +
                                 " --corpus " + (fs::path(fixtures) / "claims_small.jsonl").string() +
                                 " --conditions-dir " + conditions +
                                 " --hypotheses " + (fs::path(fixtures) / "hypotheses_desk.json").string() +
                                 " --ratings " + (fs::path(fixtures) / "ratings_synthetic.csv").string();
      const std::string cmd_a =
          cli + " --profile desk --out " + out_a.string() + common + " > " +
          (scratch_dir / "a.log").string() + " 2>&1";
      const std::string cmd_b =
          cli + " --profile desk --out " + out_b.string() + common + " --jobs 3 > " +
          (scratch_dir / "b.log").string() + " 2>&1";
      const int status_a = std::system(cmd_a.c_str());
      const int status_b = std::system(cmd_b.c_str());

      bool identical = status_a == 0 && status_b == 0;
      int compared = 0;
      for (const std::string sub : {"report", "scores", "scores_sweep", "scores_v2",
                                     "analysis", "simulate"}) {
        if (!fs::exists(out_a / sub)) {
          identical = false;
          continue;
        }
        for (const auto& entry : fs::recursive_directory_iterator(out_a / sub)) {
          if (!entry.is_regular_file()) {
            continue;
          }
          const fs::path relative = fs::relative(entry.path(), out_a);
          ++compared;
          if (!fs::exists(out_b / relative) ||
              slurp(entry.path()) != slurp(out_b / relative)) {
            identical = false;
          }
        }
      }
      record(12, "desk profile determinism", identical && compared > 0,
             "two seeded runs, " + std::to_string(compared) +
                 " output files compared byte-for-byte" +
                 (status_a == 0 && status_b == 0 ? "" : " (non-zero exit)"));
    }
  } catch (const std::exception& e) {
    record(12, "desk profile determinism", false, e.what());
  }

  bool all_passed = true;
  for (const Outcome& o : outcomes) {
    std::cout << (o.passed ? "[PASS]" : "[FAIL]") << " criterion " << o.id << ": "
              << o.name << " — " << o.detail << "\n";
    all_passed &= o.passed;
  }
  std::cout << (all_passed ? "ACCEPTANCE: all criteria satisfied"
                           : "ACCEPTANCE: criteria failed")
            << "\n";
  return all_passed ? 0 : 1;
}
