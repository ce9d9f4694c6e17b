#include "egrlab/infodyn/verification.hpp"

#include <cmath>

#include "egrlab/infodyn/concentration.hpp"
#include "egrlab/rng.hpp"

namespace egrlab::infodyn {

namespace {

constexpr double kTol = 1e-9;

Eigen::Index draw_alphabet(rng::Engine& eng) {
  return 2 + static_cast<Eigen::Index>(eng.below(7));  // 2..8
}

// Non-deterministic pre-image: some output symbol is reachable from at
// least two inputs with posterior mass above the floor.
bool non_deterministic_preimage(const DiscreteJoint& j, const Channel& c) {
  const Eigen::VectorXd px = j.state_marginal();
  for (Eigen::Index y = 0; y < c.output_size(); ++y) {
    double py = 0.0;
    for (Eigen::Index x = 0; x < c.input_size(); ++x) {
      py += px(x) * c.rows()(x, y);
    }
    if (py <= 0.0) {
      continue;
    }
    int live_inputs = 0;
    for (Eigen::Index x = 0; x < c.input_size(); ++x) {
      if (px(x) * c.rows()(x, y) / py >= 1e-6) {
        ++live_inputs;
      }
    }
    if (live_inputs >= 2) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<SuiteReport> run_verification_suites(const VerificationOptions& options) {
  const double direction = options.invert_checks ? -1.0 : 1.0;
  std::vector<SuiteReport> reports;

  // --- Closed chains: DPI monotonicity plus strictness accounting. ---
  SuiteReport dpi;
  dpi.name = "closed-chain-dpi";
  SuiteReport klgap;
  klgap.name = "kl-gap-bound";
  SuiteReport fdiv;
  fdiv.name = "f-divergence-dpi";
  for (int i = 0; i < options.chains; ++i) {
    const std::uint64_t chain_seed = rng::mix(options.seed, static_cast<std::uint64_t>(i));
    rng::Engine eng(chain_seed);
    const Eigen::Index ne = draw_alphabet(eng);
    Eigen::Index ns = draw_alphabet(eng);
    const DiscreteJoint init = random_joint(ne, ns, eng);
    const int rounds = 1 + static_cast<int>(eng.below(6));

    std::vector<ChainStep> steps;
    DiscreteJoint current = init;
    bool chain_ok = true;
    bool first_step_strict_candidate = false;
    bool first_step_strict = false;
    bool first_step_bound_positive = false;
    for (int t = 0; t < rounds; ++t) {
      const Eigen::Index out_alphabet = draw_alphabet(eng);
      const Channel c = random_channel(ns, out_alphabet, eng);
      const double before = mutual_information(current);

      if (t == 0) {
        const KlGapResult gap = kl_gap(current, c);
        ++klgap.instances;
        if (direction * (gap.gap - gap.lower_bound) < -kTol) {
          ++klgap.violations;
          if (klgap.offending_seeds.size() < 8) {
            klgap.offending_seeds.push_back(chain_seed);
          }
        }
        first_step_strict_candidate = non_deterministic_preimage(current, c);
        first_step_bound_positive = gap.lower_bound > 1e-12;

        ++fdiv.instances;
        const DiscreteJoint after_first = apply_channel(current, c);
        for (const FGenerator& g :
             {FGenerator::kl(), FGenerator::total_variation(), FGenerator::chi_squared(),
              FGenerator::hellinger()}) {
          if (direction * (f_divergence(current, g) - f_divergence(after_first, g)) <
              -kTol) {
            ++fdiv.violations;
            if (fdiv.offending_seeds.size() < 8) {
              fdiv.offending_seeds.push_back(chain_seed);
            }
            break;
          }
        }
        if (std::abs(f_divergence(current, FGenerator::kl()) - before) > kTol) {
          ++fdiv.violations;
        }
      }

      const DiscreteJoint next = apply_channel(current, c);
      const double after = mutual_information(next);
      if (direction * (before - after) < -kTol) {
        chain_ok = false;
      }
      if (t == 0 && after < before - 1e-12) {
        first_step_strict = true;
      }
      current = next;
      ns = out_alphabet;
      steps.push_back(c);
    }

    ++dpi.instances;
    if (!chain_ok) {
      ++dpi.violations;
      if (dpi.offending_seeds.size() < 8) {
        dpi.offending_seeds.push_back(chain_seed);
      }
    }
    if (first_step_strict_candidate) {
      ++dpi.strict_candidates;
      // Strict means a real information loss with a strictly positive
      // conditional-divergence bound on that same step.
      if (first_step_strict && first_step_bound_positive) {
        ++dpi.strict_decreases;
      }
    }
  }
  // Strictness clause: at least 99% of non-injective instances lose
  // information strictly.
  if (dpi.strict_candidates > 0 &&
      direction * (static_cast<double>(dpi.strict_decreases) -
                   0.99 * dpi.strict_candidates) < 0.0) {
    ++dpi.violations;
  }
  reports.push_back(dpi);
  reports.push_back(klgap);
  reports.push_back(fdiv);

  // --- Open chains: recovery never decreases MI; evidence copy tops out. ---
  SuiteReport open;
  open.name = "open-chain-recovery";
  for (int i = 0; i < options.chains; ++i) {
    const std::uint64_t chain_seed =
        rng::mix(options.seed, 0x10000ULL + static_cast<std::uint64_t>(i));
    rng::Engine eng(chain_seed);
    const Eigen::Index ne = draw_alphabet(eng);
    Eigen::Index ns = 2 + static_cast<Eigen::Index>(eng.below(3));
    DiscreteJoint current = random_joint(ne, ns, eng);
    const int rounds = 1 + static_cast<int>(eng.below(3));
    bool ok = true;
    for (int t = 0; t < rounds; ++t) {
      const Eigen::Index aux = 2 + static_cast<Eigen::Index>(eng.below(2));
      const double before = mutual_information(current);
      current = augment_open(current, random_augment_channel(ne, ns, aux, eng));
      ns *= aux;
      if (direction * (mutual_information(current) - before) < -kTol) {
        ok = false;
      }
    }
    // Evidence copy reaches the entropy ceiling exactly.
    const DiscreteJoint copied =
        augment_open(current, EvidenceAugmentChannel::evidence_copy(ne, ns));
    if (std::abs(mutual_information(copied) - entropy(copied.evidence_marginal())) > kTol) {
      ok = false;
    }
    ++open.instances;
    if (!ok) {
      ++open.violations;
      if (open.offending_seeds.size() < 8) {
        open.offending_seeds.push_back(chain_seed);
      }
    }
  }
  reports.push_back(open);

  // --- Vote floor, including high-entropy evidence with K = 2. ---
  SuiteReport vote;
  vote.name = "vote-floor";
  for (int i = 0; i < options.chains; ++i) {
    const std::uint64_t chain_seed =
        rng::mix(options.seed, 0x20000ULL + static_cast<std::uint64_t>(i));
    rng::Engine eng(chain_seed);
    // Half the instances force H(E) >= 3 bits against a binary vote.
    const bool high_entropy = i % 2 == 0;
    const Eigen::Index ne = high_entropy ? 8 : draw_alphabet(eng);
    const Eigen::Index ns = draw_alphabet(eng);
    const DiscreteJoint init =
        high_entropy ? diagonal_uniform_joint(8) : random_joint(ne, ns, eng);
    const Eigen::Index states = init.state_size();
    const Eigen::Index verdicts =
        high_entropy ? 2 : 2 + static_cast<Eigen::Index>(eng.below(std::min<std::uint64_t>(
                               3, static_cast<std::uint64_t>(states - 1))));
    VoteMap map;
    map.verdict_count = verdicts;
    for (Eigen::Index x = 0; x < states; ++x) {
      map.verdict_of_state.push_back(x % verdicts);
    }
    const double collapsed = mutual_information(vote_collapse(init, map));
    ++vote.instances;
    if (direction * (std::log2(static_cast<double>(verdicts)) - collapsed) < -kTol ||
        direction * (mutual_information(init) - collapsed) < -kTol) {
      ++vote.violations;
      if (vote.offending_seeds.size() < 8) {
        vote.offending_seeds.push_back(chain_seed);
      }
    }
  }
  reports.push_back(vote);

  // --- Concentration: Monte Carlo exceedance under the Hoeffding bound. ---
  SuiteReport conc;
  conc.name = "hoeffding-concentration";
  {
    Eigen::VectorXd fair(2);
    fair << 0.5, 0.5;
    Eigen::VectorXd tiered(5);
    tiered << 0.1, 0.2, 0.3, 0.2, 0.2;
    const struct {
      int n;
      double eps;
      const Eigen::VectorXd* dist;
    } settings[] = {{300, 0.10, &fair}, {300, 0.05, &fair}, {100, 0.15, &tiered}};
    int idx = 0;
    for (const auto& s : settings) {
      const ConcentrationResult r = simulate_sfs_concentration(
          s.n, s.eps, options.concentration_trials, *s.dist,
          rng::mix(options.seed, 0x30000ULL + static_cast<std::uint64_t>(idx)));
      // Monte Carlo slack: three sigma of the bound-level proportion.
      const double slack =
          3.0 * std::sqrt(r.bound * (1.0 - r.bound) /
                          static_cast<double>(options.concentration_trials));
      ++conc.instances;
      if (direction * (r.bound + slack - r.empirical_exceedance) < 0.0) {
        ++conc.violations;
      }
      ++idx;
    }
  }
  reports.push_back(conc);

  // --- Optional stopping on open chains. ---
  SuiteReport stopping;
  stopping.name = "optional-stopping";
  {
    Eigen::MatrixXd skewed(2, 2);
    skewed << 0.35, 0.15, 0.15, 0.35;
    const OpenChainSpec random_spec{DiscreteJoint(skewed),
                                    {RandomAugmentSpec{2}, RandomAugmentSpec{2},
                                     RandomAugmentSpec{2}}};
    const StoppingRule rules[] = {StoppingRule{FixedRoundStop{2}},
                                  StoppingRule{MiThresholdStop{0.35}},
                                  StoppingRule{MiThresholdStop{0.9}}};
    int idx = 0;
    for (const StoppingRule& rule : rules) {
      const StoppedFaithfulnessResult r = simulate_stopped_faithfulness(
          random_spec, rule, options.stopping_trials,
          rng::mix(options.seed, 0x40000ULL + static_cast<std::uint64_t>(idx)));
      ++stopping.instances;
      if (direction * (r.mean_stopped_mi - r.initial_mi) < -kTol) {
        ++stopping.violations;
      }
      ++idx;
    }
  }
  reports.push_back(stopping);

  return reports;
}

}  // namespace egrlab::infodyn
