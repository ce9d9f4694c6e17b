#include "egrlab/infodyn/distributions.hpp"

#include <cmath>
#include <string>

namespace egrlab::infodyn {

void validate_prob_vector(const Eigen::Ref<const Eigen::VectorXd>& p) {
  if (p.size() < 1) {
    throw InvalidDistribution("probability vector must have length >= 1");
  }
  if ((p.array() < 0.0).any()) {
    throw InvalidDistribution("probability vector has a negative entry");
  }
  const double sum = p.sum();
  if (std::abs(sum - 1.0) > kProbTol) {
    throw InvalidDistribution("probability vector sums to " + std::to_string(sum));
  }
}

DiscreteJoint::DiscreteJoint(Eigen::MatrixXd table) : table_(std::move(table)) {
  if (table_.rows() < 1 || table_.cols() < 1) {
    throw InvalidDistribution("joint table must be at least 1x1");
  }
  if ((table_.array() < 0.0).any()) {
    throw InvalidDistribution("joint table has a negative cell");
  }
  const double total = table_.sum();
  if (std::abs(total - 1.0) > kProbTol) {
    throw InvalidDistribution("joint table sums to " + std::to_string(total));
  }
}

Channel::Channel(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw InvalidDistribution("channel must be at least 1x1");
  }
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    validate_prob_vector(rows_.row(i).transpose());
  }
}

Channel Channel::identity(Eigen::Index n) {
  return Channel(Eigen::MatrixXd::Identity(n, n));
}

Channel Channel::constant(Eigen::Index n, Eigen::Index target) {
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n, n);
  rows.col(target).setOnes();
  return Channel(rows);
}

EvidenceAugmentChannel::EvidenceAugmentChannel(Eigen::MatrixXd rows,
                                               Eigen::Index evidence_size,
                                               Eigen::Index state_size)
    : rows_(std::move(rows)), evidence_size_(evidence_size), state_size_(state_size) {
  if (rows_.rows() != evidence_size_ * state_size_) {
    throw ShapeMismatch("augment channel rows must cover the (evidence x state) pairs");
  }
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    validate_prob_vector(rows_.row(i).transpose());
  }
}

EvidenceAugmentChannel EvidenceAugmentChannel::evidence_copy(Eigen::Index evidence_size,
                                                             Eigen::Index state_size) {
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(evidence_size * state_size, evidence_size);
  for (Eigen::Index e = 0; e < evidence_size; ++e) {
    for (Eigen::Index x = 0; x < state_size; ++x) {
      rows(e * state_size + x, e) = 1.0;
    }
  }
  return EvidenceAugmentChannel(std::move(rows), evidence_size, state_size);
}

EvidenceAugmentChannel EvidenceAugmentChannel::noisy_evidence_copy(Eigen::Index evidence_size,
                                                                   Eigen::Index state_size,
                                                                   double flip_prob) {
  if (flip_prob < 0.0 || flip_prob > 1.0) {
    throw InvalidArgument("flip_prob must be within [0, 1]");
  }
  if (evidence_size < 2) {
    throw InvalidArgument("noisy evidence copy needs an evidence alphabet of >= 2");
  }
  const double off = flip_prob / static_cast<double>(evidence_size - 1);
  Eigen::MatrixXd rows(evidence_size * state_size, evidence_size);
  for (Eigen::Index e = 0; e < evidence_size; ++e) {
    for (Eigen::Index x = 0; x < state_size; ++x) {
      for (Eigen::Index a = 0; a < evidence_size; ++a) {
        rows(e * state_size + x, a) = (a == e) ? 1.0 - flip_prob : off;
      }
    }
  }
  return EvidenceAugmentChannel(std::move(rows), evidence_size, state_size);
}

EvidenceAugmentChannel EvidenceAugmentChannel::independent(Eigen::Index evidence_size,
                                                           Eigen::Index state_size,
                                                           const Eigen::VectorXd& aux_dist) {
  validate_prob_vector(aux_dist);
  Eigen::MatrixXd rows =
      aux_dist.transpose().replicate(evidence_size * state_size, 1);
  return EvidenceAugmentChannel(std::move(rows), evidence_size, state_size);
}

Eigen::VectorXd random_prob_vector(Eigen::Index n, rng::Engine& eng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = eng.exponential();
  }
  v /= v.sum();
  return v;
}

DiscreteJoint random_joint(Eigen::Index evidence_size, Eigen::Index state_size,
                           rng::Engine& eng) {
  const Eigen::VectorXd flat = random_prob_vector(evidence_size * state_size, eng);
  Eigen::MatrixXd table(evidence_size, state_size);
  for (Eigen::Index e = 0; e < evidence_size; ++e) {
    for (Eigen::Index x = 0; x < state_size; ++x) {
      table(e, x) = flat(e * state_size + x);
    }
  }
  return DiscreteJoint(std::move(table));
}

Channel random_channel(Eigen::Index input_size, Eigen::Index output_size,
                       rng::Engine& eng) {
  Eigen::MatrixXd rows(input_size, output_size);
  for (Eigen::Index i = 0; i < input_size; ++i) {
    rows.row(i) = random_prob_vector(output_size, eng).transpose();
  }
  return Channel(std::move(rows));
}

EvidenceAugmentChannel random_augment_channel(Eigen::Index evidence_size,
                                              Eigen::Index state_size,
                                              Eigen::Index aux_size,
                                              rng::Engine& eng) {
  Eigen::MatrixXd rows(evidence_size * state_size, aux_size);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    rows.row(i) = random_prob_vector(aux_size, eng).transpose();
  }
  return EvidenceAugmentChannel(std::move(rows), evidence_size, state_size);
}

DiscreteJoint diagonal_uniform_joint(Eigen::Index n) {
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    table(i, i) = 1.0 / static_cast<double>(n);
  }
  return DiscreteJoint(std::move(table));
}

DiscreteJoint product_joint(const Eigen::VectorXd& evidence, const Eigen::VectorXd& state) {
  validate_prob_vector(evidence);
  validate_prob_vector(state);
  return DiscreteJoint(evidence * state.transpose());
}

}  // namespace egrlab::infodyn
