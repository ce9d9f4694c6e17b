#include "egrlab/infodyn/concentration.hpp"

#include <cmath>

namespace egrlab::infodyn {

double hoeffding_bound(int n, double eps) {
  if (n < 1) {
    throw InvalidArgument("claim count must be >= 1");
  }
  if (eps <= 0.0) {
    throw InvalidArgument("deviation must be > 0");
  }
  const double raw = 2.0 * std::exp(-2.0 * static_cast<double>(n) * eps * eps);
  return std::min(raw, 1.0);
}

ConcentrationResult simulate_sfs_concentration(int n, double eps, int trials,
                                               const Eigen::VectorXd& score_dist,
                                               std::uint64_t seed) {
  const double bound = hoeffding_bound(n, eps);
  if (trials < 1) {
    throw InvalidArgument("trials must be >= 1");
  }
  validate_prob_vector(score_dist);

  const Eigen::Index levels = score_dist.size();
  Eigen::VectorXd grid(levels);
  for (Eigen::Index i = 0; i < levels; ++i) {
    grid(i) = levels == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(levels - 1);
  }
  const double mean_score = grid.dot(score_dist);

  Eigen::VectorXd cdf(levels);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < levels; ++i) {
    acc += score_dist(i);
    cdf(i) = acc;
  }
  cdf(levels - 1) = 1.0;

  rng::Engine eng(seed);
  int exceed = 0;
  for (int t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = eng.uniform01();
      Eigen::Index lo = 0;
      while (cdf(lo) < u) {
        ++lo;
      }
      sum += grid(lo);
    }
    if (std::abs(sum / n - mean_score) > eps) {
      ++exceed;
    }
  }
  return {static_cast<double>(exceed) / static_cast<double>(trials), bound};
}

StoppedFaithfulnessResult simulate_stopped_faithfulness(const OpenChainSpec& spec,
                                                        const StoppingRule& rule,
                                                        int trials,
                                                        std::uint64_t seed) {
  if (trials < 1) {
    throw InvalidArgument("trials must be >= 1");
  }
  if (spec.steps.empty()) {
    throw InvalidArgument("stopped chain needs at least one open step");
  }
  const double f0 = mutual_information(spec.init);

  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    rng::Engine eng(rng::mix(seed, static_cast<std::uint64_t>(t)));
    DiscreteJoint current = spec.init;
    std::vector<double> mi{f0};
    for (const OpenStep& step : spec.steps) {
      if (const auto* fixed = std::get_if<EvidenceAugmentChannel>(&step)) {
        current = augment_open(current, *fixed);
      } else {
        const auto& rand_spec = std::get<RandomAugmentSpec>(step);
        current = augment_open(
            current, random_augment_channel(current.evidence_size(), current.state_size(),
                                            rand_spec.aux_size, eng));
      }
      mi.push_back(mutual_information(current));
    }

    std::size_t stop = mi.size() - 1;
    if (const auto* fixed_round = std::get_if<FixedRoundStop>(&rule)) {
      if (fixed_round->round < 0) {
        throw InvalidArgument("fixed stopping round must be >= 0");
      }
      stop = std::min<std::size_t>(static_cast<std::size_t>(fixed_round->round), mi.size() - 1);
    } else {
      const double tau = std::get<MiThresholdStop>(rule).bits;
      for (std::size_t r = 0; r < mi.size(); ++r) {
        if (mi[r] >= tau) {
          stop = r;
          break;
        }
      }
    }
    total += mi[stop];
  }
  return {total / static_cast<double>(trials), f0};
}

}  // namespace egrlab::infodyn
