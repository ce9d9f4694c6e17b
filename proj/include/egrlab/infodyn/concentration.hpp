#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "egrlab/infodyn/chain.hpp"

namespace egrlab::infodyn {

// Two-sided Hoeffding tail 2 exp(-2 n eps^2) for a mean of n values in
// [0, 1], capped at 1 since it is reported as a probability.
double hoeffding_bound(int n, double eps);

struct ConcentrationResult {
  double empirical_exceedance;
  double bound;
};

// Monte Carlo check of the concentration bound: `score_dist` is a
// distribution over an evenly spaced grid on [0, 1] (grid point i at
// i / (L - 1); a single-point grid sits at 0). Each trial draws n claim
// scores, and exceedance counts trials with |mean - E[score]| > eps.
ConcentrationResult simulate_sfs_concentration(int n, double eps, int trials,
                                               const Eigen::VectorXd& score_dist,
                                               std::uint64_t seed);

// One step of an open chain whose augment channel is redrawn per trial.
struct RandomAugmentSpec {
  Eigen::Index aux_size = 2;
};

using OpenStep = std::variant<EvidenceAugmentChannel, RandomAugmentSpec>;

struct OpenChainSpec {
  DiscreteJoint init;
  std::vector<OpenStep> steps;
};

// Stop at round min(t, T).
struct FixedRoundStop {
  int round;
};
// Stop at the first round whose MI reaches `bits`; falls back to the final
// round, which keeps every rule almost-surely finite.
struct MiThresholdStop {
  double bits;
};

using StoppingRule = std::variant<FixedRoundStop, MiThresholdStop>;

struct StoppedFaithfulnessResult {
  double mean_stopped_mi;  // bits
  double initial_mi;       // bits, MI of the spec's init joint
};

// Monte Carlo over `trials` realizations of the (possibly randomized) open
// chain, stopping each trajectory per `rule` and averaging the stopped MI.
// Open steps never decrease MI here, so the stopped mean dominates the
// initial MI up to Monte Carlo noise.
StoppedFaithfulnessResult simulate_stopped_faithfulness(const OpenChainSpec& spec,
                                                        const StoppingRule& rule,
                                                        int trials,
                                                        std::uint64_t seed);

}  // namespace egrlab::infodyn
