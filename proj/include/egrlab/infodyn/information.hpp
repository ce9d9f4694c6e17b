#pragma once

#include <Eigen/Dense>

#include "egrlab/infodyn/distributions.hpp"

namespace egrlab::infodyn {

// Shannon entropy in bits, with 0 * log 0 := 0.
double entropy(const Eigen::Ref<const Eigen::VectorXd>& p);

// I(E; X) in bits: sum of p(e,x) * log2(p(e,x) / (p(e) p(x))) over non-zero
// cells. Always in [0, min(H(E), H(X))] up to rounding.
double mutual_information(const DiscreteJoint& j);

struct KlGapResult {
  double gap;          // MI(input) - MI(output), bits
  double lower_bound;  // expected conditional KL of the pre-image, bits
};

// Per-step information loss of a closed-system round together with its
// conditional-divergence lower bound. The bound is the expectation, over the
// pre-update joint of (evidence, channel output), of
// KL( P(state | evidence, output) || P(state | output) ).
// Zero exactly when the channel is injective on the support.
KlGapResult kl_gap(const DiscreteJoint& j, const Channel& c);

// Convex generators for f-divergences between the joint and the product of
// its marginals. The kl generator reproduces mutual information in bits.
struct FGenerator {
  enum class Name { kKl, kTotalVariation, kChiSquared, kHellinger, kRenyi };
  Name name = Name::kKl;
  double alpha = 2.0;  // Renyi order; must be > 0 and != 1

  static FGenerator kl() { return {Name::kKl, 0.0}; }
  static FGenerator total_variation() { return {Name::kTotalVariation, 0.0}; }
  static FGenerator chi_squared() { return {Name::kChiSquared, 0.0}; }
  static FGenerator hellinger() { return {Name::kHellinger, 0.0}; }
  static FGenerator renyi(double alpha = 2.0) { return {Name::kRenyi, alpha}; }
};

// D_f(P_{E,X} || P_E x P_X) = sum_q q * f(p/q); kl is reported in bits.
double f_divergence(const DiscreteJoint& j, const FGenerator& g);

}  // namespace egrlab::infodyn
