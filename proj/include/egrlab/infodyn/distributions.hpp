#pragma once

#include <Eigen/Dense>

#include "egrlab/errors.hpp"
#include "egrlab/rng.hpp"

namespace egrlab::infodyn {

// Tolerance for "sums to one" invariants on probability objects.
inline constexpr double kProbTol = 1e-12;

// Throws InvalidDistribution unless p is a probability vector:
// length >= 1, entries >= 0, entries sum to 1 within kProbTol.
void validate_prob_vector(const Eigen::Ref<const Eigen::VectorXd>& p);

// Exact joint probability table over (evidence symbol e, state symbol x).
// Rows index the evidence alphabet, columns the state alphabet.
class DiscreteJoint {
 public:
  explicit DiscreteJoint(Eigen::MatrixXd table);

  Eigen::Index evidence_size() const { return table_.rows(); }
  Eigen::Index state_size() const { return table_.cols(); }
  const Eigen::MatrixXd& table() const { return table_; }

  Eigen::VectorXd evidence_marginal() const { return table_.rowwise().sum(); }
  Eigen::VectorXd state_marginal() const { return table_.colwise().sum().transpose(); }

 private:
  Eigen::MatrixXd table_;
};

// Row-stochastic transition matrix: one row per input symbol, each row a
// distribution over output symbols. Models one closed-system round.
class Channel {
 public:
  explicit Channel(Eigen::MatrixXd rows);

  Eigen::Index input_size() const { return rows_.rows(); }
  Eigen::Index output_size() const { return rows_.cols(); }
  const Eigen::MatrixXd& rows() const { return rows_; }

  static Channel identity(Eigen::Index n);
  // All inputs map to output symbol `target`.
  static Channel constant(Eigen::Index n, Eigen::Index target = 0);

 private:
  Eigen::MatrixXd rows_;
};

// Conditional distribution of an auxiliary symbol given (evidence, state).
// Row index is e * state_size + x; models auxiliary content generated with
// direct access to the evidence (the open-system step).
class EvidenceAugmentChannel {
 public:
  EvidenceAugmentChannel(Eigen::MatrixXd rows, Eigen::Index evidence_size,
                         Eigen::Index state_size);

  Eigen::Index evidence_size() const { return evidence_size_; }
  Eigen::Index state_size() const { return state_size_; }
  Eigen::Index aux_size() const { return rows_.cols(); }
  const Eigen::MatrixXd& rows() const { return rows_; }

  // Auxiliary symbol is an exact copy of the evidence symbol.
  static EvidenceAugmentChannel evidence_copy(Eigen::Index evidence_size,
                                              Eigen::Index state_size);
  // Copy of the evidence symbol flipped away with probability flip_prob
  // (mass spread uniformly over the other evidence symbols).
  static EvidenceAugmentChannel noisy_evidence_copy(Eigen::Index evidence_size,
                                                    Eigen::Index state_size,
                                                    double flip_prob);
  // Auxiliary independent of (evidence, state): every row equals `aux_dist`.
  static EvidenceAugmentChannel independent(Eigen::Index evidence_size,
                                            Eigen::Index state_size,
                                            const Eigen::VectorXd& aux_dist);

 private:
  Eigen::MatrixXd rows_;
  Eigen::Index evidence_size_;
  Eigen::Index state_size_;
};

// Dirichlet(1,...,1) samples: uniform over the simplex, full support a.s.
Eigen::VectorXd random_prob_vector(Eigen::Index n, rng::Engine& eng);
DiscreteJoint random_joint(Eigen::Index evidence_size, Eigen::Index state_size,
                           rng::Engine& eng);
Channel random_channel(Eigen::Index input_size, Eigen::Index output_size,
                       rng::Engine& eng);
EvidenceAugmentChannel random_augment_channel(Eigen::Index evidence_size,
                                              Eigen::Index state_size,
                                              Eigen::Index aux_size,
                                              rng::Engine& eng);

// Uniform-diagonal joint on an n x n alphabet (perfectly correlated pair).
DiscreteJoint diagonal_uniform_joint(Eigen::Index n);

// Product joint p(e) * p(x) from two marginals (zero mutual information).
DiscreteJoint product_joint(const Eigen::VectorXd& evidence,
                            const Eigen::VectorXd& state);

}  // namespace egrlab::infodyn
