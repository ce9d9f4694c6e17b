#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "egrlab/infodyn/chain.hpp"
#include "egrlab/infodyn/chain_spec.hpp"
#include "egrlab/infodyn/concentration.hpp"
#include "egrlab/infodyn/information.hpp"

using namespace egrlab;
using namespace egrlab::infodyn;

namespace {

Eigen::MatrixXd correlated_2x2() {
  Eigen::MatrixXd t(2, 2);
  t << 0.4, 0.1, 0.1, 0.4;
  return t;
}

// Independent route: direct cell-by-cell summation.
double mi_brute_force(const Eigen::MatrixXd& table) {
  const Eigen::VectorXd pe = table.rowwise().sum();
  const Eigen::VectorXd px = table.colwise().sum().transpose();
  double total = 0.0;
  for (Eigen::Index e = 0; e < table.rows(); ++e) {
    for (Eigen::Index x = 0; x < table.cols(); ++x) {
      if (table(e, x) > 0.0) {
        total += table(e, x) * std::log2(table(e, x) / (pe(e) * px(x)));
      }
    }
  }
  return total;
}

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

// Exact binomial two-sided tail P(|S/n - 1/2| > eps) for fair-coin scores.
double binomial_exceedance(int n, double eps) {
  const double half = 0.5 * n;
  double tail = 0.0;
  for (int s = 0; s <= n; ++s) {
    if (std::abs(static_cast<double>(s) - half) > eps * n) {
      const double log_p = std::lgamma(n + 1.0) - std::lgamma(s + 1.0) -
                           std::lgamma(n - s + 1.0) - n * std::log(2.0);
      tail += std::exp(log_p);
    }
  }
  return tail;
}

}  // namespace

TEST_CASE("entropy on the canonical distributions") {
  Eigen::VectorXd uniform4 = Eigen::VectorXd::Constant(4, 0.25);
  CHECK(entropy(uniform4) == doctest::Approx(2.0).epsilon(1e-12));

  Eigen::VectorXd degenerate(3);
  degenerate << 1.0, 0.0, 0.0;
  CHECK(entropy(degenerate) == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::VectorXd skewed(2);
  skewed << 0.25, 0.75;
  // Hand oracle: -(1/4)log2(1/4) - (3/4)log2(3/4).
  CHECK(entropy(skewed) == doctest::Approx(0.8112781244591328).epsilon(1e-12));

  Eigen::VectorXd single(1);
  single << 1.0;
  CHECK(entropy(single) == 0.0);
}

TEST_CASE("entropy rejects invalid distributions") {
  Eigen::VectorXd negative(2);
  negative << 1.2, -0.2;
  CHECK_THROWS_AS(entropy(negative), InvalidDistribution);

  Eigen::VectorXd off(2);
  off << 0.5, 0.49;
  CHECK_THROWS_AS(entropy(off), InvalidDistribution);
}

TEST_CASE("mutual information on canonical joints") {
  Eigen::VectorXd pe(2);
  pe << 0.3, 0.7;
  Eigen::VectorXd px(3);
  px << 0.2, 0.5, 0.3;
  CHECK(mutual_information(product_joint(pe, px)) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(mutual_information(diagonal_uniform_joint(2)) == doctest::Approx(1.0).epsilon(1e-12));

  const DiscreteJoint j(correlated_2x2());
  CHECK(mutual_information(j) == doctest::Approx(0.2780719051126377).epsilon(1e-12));
  CHECK(mutual_information(j) == doctest::Approx(mi_brute_force(correlated_2x2())));

  // Ceiling: never above the evidence entropy.
  CHECK(mutual_information(j) <= entropy(j.evidence_marginal()) + 1e-12);
}

TEST_CASE("apply_channel equality and collapse cases") {
  const DiscreteJoint j(correlated_2x2());

  const DiscreteJoint same = apply_channel(j, Channel::identity(2));
  CHECK((same.table() - j.table()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(mutual_information(same) == doctest::Approx(mutual_information(j)));

  const DiscreteJoint collapsed = apply_channel(j, Channel::constant(2));
  CHECK(mutual_information(collapsed) == doctest::Approx(0.0).epsilon(1e-12));

  rng::Engine eng(11);
  const Channel random = random_channel(2, 2, eng);
  const DiscreteJoint out = apply_channel(j, random);
  CHECK(mutual_information(out) <= mutual_information(j) + 1e-9);
  CHECK((out.evidence_marginal() - j.evidence_marginal()).cwiseAbs().maxCoeff() <= 1e-12);

  // Exact output table against a brute-force summation.
  for (Eigen::Index e = 0; e < 2; ++e) {
    for (Eigen::Index y = 0; y < 2; ++y) {
      double cell = 0.0;
      for (Eigen::Index x = 0; x < 2; ++x) {
        cell += j.table()(e, x) * random.rows()(x, y);
      }
      CHECK(out.table()(e, y) == doctest::Approx(cell).epsilon(1e-14));
    }
  }

  CHECK_THROWS_AS(apply_channel(j, Channel::identity(3)), ShapeMismatch);
}

TEST_CASE("augment_open recovers, preserves, and bounds") {
  // Zero-MI start: evidence uniform over 2, state uniform over 2.
  Eigen::VectorXd uniform2 = Eigen::VectorXd::Constant(2, 0.5);
  const DiscreteJoint start = product_joint(uniform2, uniform2);
  REQUIRE(mutual_information(start) == doctest::Approx(0.0));

  const DiscreteJoint copied =
      augment_open(start, EvidenceAugmentChannel::evidence_copy(2, 2));
  CHECK(mutual_information(copied) ==
        doctest::Approx(entropy(start.evidence_marginal())).epsilon(1e-12));

  const DiscreteJoint untouched =
      augment_open(start, EvidenceAugmentChannel::independent(2, 2, uniform2));
  CHECK(mutual_information(untouched) == doctest::Approx(0.0).epsilon(1e-12));

  // Noisy evidence copy: binary symmetric channel closed form 1 - H(flip).
  const DiscreteJoint noisy =
      augment_open(start, EvidenceAugmentChannel::noisy_evidence_copy(2, 2, 0.2));
  CHECK(mutual_information(noisy) ==
        doctest::Approx(1.0 - binary_entropy(0.2)).epsilon(1e-12));
  CHECK(mutual_information(noisy) == doctest::Approx(0.2780719051126377).epsilon(1e-10));

  CHECK_THROWS_AS(augment_open(start, EvidenceAugmentChannel::evidence_copy(3, 2)),
                  ShapeMismatch);
}

TEST_CASE("vote_collapse floor, relabeling, and block merge") {
  // H(E) = 3 bits, K = 2: the floor binds at 1 bit.
  const DiscreteJoint big = diagonal_uniform_joint(8);
  REQUIRE(entropy(big.evidence_marginal()) == doctest::Approx(3.0));
  VoteMap two_way;
  two_way.verdict_count = 2;
  for (Eigen::Index x = 0; x < 8; ++x) {
    two_way.verdict_of_state.push_back(x % 2);
  }
  CHECK(mutual_information(vote_collapse(big, two_way)) <= 1.0 + 1e-9);

  // Injective relabeling keeps MI.
  const DiscreteJoint j(correlated_2x2());
  VoteMap relabel{{1, 0}, 2};
  CHECK(mutual_information(vote_collapse(j, relabel)) ==
        doctest::Approx(mutual_information(j)).epsilon(1e-12));

  // Majority-style 4 -> 2 block merge of the diagonal uniform joint.
  VoteMap blocks{{0, 0, 1, 1}, 2};
  CHECK(mutual_information(vote_collapse(diagonal_uniform_joint(4), blocks)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  VoteMap not_surjective{{0, 0, 0, 0}, 2};
  CHECK_THROWS_AS(vote_collapse(diagonal_uniform_joint(4), not_surjective), ShapeMismatch);
}

TEST_CASE("run_chain trajectories and regimes") {
  const DiscreteJoint j(correlated_2x2());

  std::vector<ChainStep> identities(4, Channel::identity(2));
  const ChainTrajectory flat = run_chain(j, identities);
  CHECK(flat.regime == Regime::kClosed);
  CHECK(flat.rounds() == 4);
  for (const double mi : flat.mi_per_round) {
    CHECK(mi == doctest::Approx(flat.mi_per_round.front()).epsilon(1e-12));
  }

  rng::Engine eng(5);
  std::vector<ChainStep> closing;
  for (int i = 0; i < 3; ++i) {
    closing.emplace_back(random_channel(2, 2, eng));
  }
  closing.emplace_back(VoteMap{{0, 1}, 2});
  const ChainTrajectory decreasing = run_chain(j, closing);
  CHECK(decreasing.regime == Regime::kVoteCollapsed);
  for (std::size_t t = 1; t < decreasing.mi_per_round.size(); ++t) {
    CHECK(decreasing.mi_per_round[t] <= decreasing.mi_per_round[t - 1] + 1e-9);
  }
  CHECK(decreasing.mi_per_round.back() <= 1.0 + 1e-9);

  // Alternating evidence-copy and noisy closed steps: the open steps never
  // lose information.
  std::vector<ChainStep> mixed;
  mixed.emplace_back(EvidenceAugmentChannel::evidence_copy(2, 2));
  mixed.emplace_back(random_channel(4, 4, eng));
  mixed.emplace_back(EvidenceAugmentChannel::evidence_copy(2, 4));
  const ChainTrajectory recovered = run_chain(j, mixed);
  CHECK(recovered.regime == Regime::kOpen);
  CHECK(recovered.mi_per_round[1] >= recovered.mi_per_round[0] - 1e-9);
  CHECK(recovered.mi_per_round[3] >= recovered.mi_per_round[2] - 1e-9);
}

TEST_CASE("kl_gap equality and strictness") {
  const DiscreteJoint j(correlated_2x2());

  const KlGapResult same = kl_gap(j, Channel::identity(2));
  CHECK(same.gap == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.lower_bound == doctest::Approx(0.0).epsilon(1e-12));

  const KlGapResult collapsed = kl_gap(j, Channel::constant(2));
  CHECK(collapsed.gap == doctest::Approx(0.2780719051126377).epsilon(1e-12));
  CHECK(collapsed.lower_bound <= collapsed.gap + 1e-9);
  CHECK(collapsed.lower_bound > 0.0);

  // 2 -> 1 merging channel over a 2x3 joint: strict positive gap and bound.
  Eigen::MatrixXd t(2, 3);
  t << 0.30, 0.10, 0.10, 0.05, 0.25, 0.20;
  const DiscreteJoint wide(t);
  Eigen::MatrixXd merge(3, 2);
  merge << 1, 0, 1, 0, 0, 1;
  const KlGapResult merged = kl_gap(wide, Channel(merge));
  CHECK(merged.gap >= merged.lower_bound - 1e-9);
  CHECK(merged.lower_bound > 0.0);
  CHECK(merged.gap > 0.0);
}

TEST_CASE("f-divergences against their closed forms") {
  Eigen::VectorXd pe(2);
  pe << 0.4, 0.6;
  Eigen::VectorXd px(2);
  px << 0.7, 0.3;
  const DiscreteJoint independent = product_joint(pe, px);
  for (const FGenerator& g :
       {FGenerator::kl(), FGenerator::total_variation(), FGenerator::chi_squared(),
        FGenerator::hellinger(), FGenerator::renyi(2.0)}) {
    CHECK(f_divergence(independent, g) == doctest::Approx(0.0).epsilon(1e-12));
  }

  const DiscreteJoint j(correlated_2x2());
  CHECK(f_divergence(j, FGenerator::kl()) ==
        doctest::Approx(mutual_information(j)).epsilon(1e-12));

  // Total variation between the diagonal joint and its product: hand value
  // 0.5 * (4 cells each off by 1/4).
  CHECK(f_divergence(diagonal_uniform_joint(2), FGenerator::total_variation()) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // The alpha=2 Renyi generator differs from chi-squared by a vanishing
  // linear term, so the divergences coincide.
  CHECK(f_divergence(j, FGenerator::renyi(2.0)) ==
        doctest::Approx(f_divergence(j, FGenerator::chi_squared())).epsilon(1e-12));

  CHECK_THROWS_AS(f_divergence(j, FGenerator::renyi(1.0)), InvalidGenerator);
  CHECK_THROWS_AS(f_divergence(j, FGenerator::renyi(-0.5)), InvalidGenerator);
}

TEST_CASE("property sweeps over random instances") {
  rng::Engine seeder(2024);
  int strict_candidates = 0;
  int strict_decreases = 0;
  for (int instance = 0; instance < 200; ++instance) {
    rng::Engine eng(seeder.next_u64());
    const Eigen::Index ne = 2 + static_cast<Eigen::Index>(eng.below(7));
    const Eigen::Index ns = 2 + static_cast<Eigen::Index>(eng.below(7));
    const DiscreteJoint j = random_joint(ne, ns, eng);
    const double h_e = entropy(j.evidence_marginal());
    const double mi0 = mutual_information(j);
    CHECK(mi0 <= h_e + 1e-9);

    // Closed step: DPI, KL-gap bound, f-divergence DPI.
    const Channel c = random_channel(ns, 2 + static_cast<Eigen::Index>(eng.below(7)), eng);
    const DiscreteJoint out = apply_channel(j, c);
    const double mi1 = mutual_information(out);
    CHECK(mi1 <= mi0 + 1e-9);

    const KlGapResult gap = kl_gap(j, c);
    CHECK(gap.gap >= gap.lower_bound - 1e-9);
    CHECK(gap.lower_bound >= -1e-12);

    ++strict_candidates;  // dense random channels have non-deterministic pre-images
    if (mi1 < mi0 - 1e-12) {
      ++strict_decreases;
    }

    for (const FGenerator& g :
         {FGenerator::kl(), FGenerator::total_variation(), FGenerator::chi_squared(),
          FGenerator::hellinger()}) {
      CHECK(f_divergence(out, g) <= f_divergence(j, g) + 1e-9);
    }
    CHECK(std::abs(f_divergence(j, FGenerator::kl()) - mi0) <= 1e-9);

    // Open step: recovery never loses information.
    const EvidenceAugmentChannel a =
        random_augment_channel(ne, ns, 2 + static_cast<Eigen::Index>(eng.below(3)), eng);
    CHECK(mutual_information(augment_open(j, a)) >= mi0 - 1e-9);

    // Vote floor.
    VoteMap vote;
    vote.verdict_count = 2;
    for (Eigen::Index x = 0; x < ns; ++x) {
      vote.verdict_of_state.push_back(x < ns / 2 ? 0 : 1);
    }
    CHECK(mutual_information(vote_collapse(j, vote)) <= 1.0 + 1e-9);
  }
  // Strictness: nearly every random instance should lose information.
  CHECK(static_cast<double>(strict_decreases) >= 0.99 * strict_candidates);
}

TEST_CASE("hoeffding bound values match the reported design points") {
  CHECK(hoeffding_bound(300, 0.10) >= 4.9e-3);
  CHECK(hoeffding_bound(300, 0.10) <= 5.0e-3);
  CHECK(hoeffding_bound(300, 0.05) >= 0.44);
  CHECK(hoeffding_bound(300, 0.05) <= 0.45);
  // 2 exp(-2 * 0.16) is about 1.45: capped because it is a probability.
  CHECK(hoeffding_bound(1, 0.4) == 1.0);
  CHECK_THROWS_AS(hoeffding_bound(0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(hoeffding_bound(10, 0.0), InvalidArgument);
  CHECK_THROWS_AS(hoeffding_bound(10, -0.2), InvalidArgument);
}

TEST_CASE("concentration simulation stays under the bound") {
  Eigen::VectorXd fair_coin(2);
  fair_coin << 0.5, 0.5;

  const ConcentrationResult r = simulate_sfs_concentration(300, 0.10, 10000, fair_coin, 42);
  CHECK(r.bound == doctest::Approx(hoeffding_bound(300, 0.10)));
  CHECK(r.empirical_exceedance <= r.bound);
  // Exact binomial oracle plus 3-sigma Monte Carlo slack.
  const double exact = binomial_exceedance(300, 0.10);
  const double sigma = std::sqrt(exact * (1.0 - exact) / 10000.0);
  CHECK(r.empirical_exceedance <= exact + 3.0 * sigma);
  CHECK(r.empirical_exceedance >= exact - 3.0 * sigma);

  // Range bound: scores live in [0, 1], so eps >= 1 can never be exceeded.
  CHECK(simulate_sfs_concentration(10, 1.0, 500, fair_coin, 1).empirical_exceedance == 0.0);

  // n = 1 fair coin at eps 0.4: both outcomes deviate by 0.5.
  const ConcentrationResult tiny = simulate_sfs_concentration(1, 0.4, 2000, fair_coin, 7);
  CHECK(tiny.empirical_exceedance == 1.0);
  CHECK(tiny.bound == 1.0);

  CHECK_THROWS_AS(simulate_sfs_concentration(5, 0.1, 0, fair_coin, 1), InvalidArgument);
}

TEST_CASE("optional stopping preserves the recovery") {
  Eigen::VectorXd uniform2 = Eigen::VectorXd::Constant(2, 0.5);
  const DiscreteJoint start = product_joint(uniform2, uniform2);

  // Deterministic evidence-copy chain, fixed-T rule.
  OpenChainSpec copy_chain{start,
                           {EvidenceAugmentChannel::evidence_copy(2, 2),
                            EvidenceAugmentChannel::evidence_copy(2, 4)}};
  const StoppedFaithfulnessResult fixed =
      simulate_stopped_faithfulness(copy_chain, FixedRoundStop{2}, 50, 3);
  CHECK(fixed.initial_mi == doctest::Approx(0.0));
  CHECK(fixed.mean_stopped_mi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fixed.mean_stopped_mi >= fixed.initial_mi);

  // Threshold rule stops at round 1 with the full H(E).
  const StoppedFaithfulnessResult thresh =
      simulate_stopped_faithfulness(copy_chain, MiThresholdStop{0.5}, 50, 3);
  CHECK(thresh.mean_stopped_mi == doctest::Approx(1.0).epsilon(1e-12));

  // Randomized augmentations: sub-martingale property up to MC slack.
  Eigen::MatrixXd skewed(2, 2);
  skewed << 0.35, 0.15, 0.15, 0.35;
  OpenChainSpec random_chain{DiscreteJoint(skewed),
                             {RandomAugmentSpec{2}, RandomAugmentSpec{2}, RandomAugmentSpec{3}}};
  const StoppedFaithfulnessResult mc =
      simulate_stopped_faithfulness(random_chain, MiThresholdStop{0.3}, 1000, 11);
  CHECK(mc.mean_stopped_mi >= mc.initial_mi - 1e-9);

  CHECK_THROWS_AS(simulate_stopped_faithfulness(copy_chain, FixedRoundStop{2}, 0, 1),
                  InvalidArgument);
}

TEST_CASE("chain specs load from JSON and trajectories serialize as CSV") {
  const std::string spec_json = R"({
    "evidence_alphabet": 2,
    "state_alphabet": 2,
    "seed": 9,
    "init": {"kind": "table", "table": [[0.4, 0.1], [0.1, 0.4]]},
    "steps": [
      {"kind": "closed", "channel": "random"},
      {"kind": "open", "mode": "evidence-copy"},
      {"kind": "vote", "verdicts": 2}
    ]
  })";
  const auto path = std::filesystem::temp_directory_path() / "egrlab_chain_spec_test.json";
  {
    std::ofstream out(path);
    out << spec_json;
  }
  const ChainSpec spec = load_chain_spec(path);
  CHECK(spec.evidence_size == 2);
  CHECK(spec.steps.size() == 3);

  const ChainTrajectory traj = run_chain(spec.init, spec.steps);
  CHECK(traj.regime == Regime::kOpen);
  CHECK(traj.mi_per_round.front() == doctest::Approx(0.2780719051126377));

  std::ostringstream csv;
  write_trajectory_csv(traj, csv);
  CHECK(csv.str().starts_with("round,mi_bits,regime\n0,"));
  CHECK(csv.str().find(",open") != std::string::npos);
  std::filesystem::remove(path);
}
