#include "egrlab/infodyn/information.hpp"

#include <cmath>

#include "egrlab/infodyn/chain.hpp"

namespace egrlab::infodyn {

namespace {

constexpr double kLn2 = 0.6931471805599453;

double clamp_nonneg(double v) { return (v < 0.0 && v > -1e-9) ? 0.0 : v; }

}  // namespace

double entropy(const Eigen::Ref<const Eigen::VectorXd>& p) {
  validate_prob_vector(p);
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) {
      h -= p(i) * std::log2(p(i));
    }
  }
  return clamp_nonneg(h);
}

double mutual_information(const DiscreteJoint& j) {
  const Eigen::VectorXd pe = j.evidence_marginal();
  const Eigen::VectorXd px = j.state_marginal();
  double mi = 0.0;
  for (Eigen::Index e = 0; e < j.evidence_size(); ++e) {
    for (Eigen::Index x = 0; x < j.state_size(); ++x) {
      const double p = j.table()(e, x);
      if (p > 0.0) {
        mi += p * std::log2(p / (pe(e) * px(x)));
      }
    }
  }
  return clamp_nonneg(mi);
}

KlGapResult kl_gap(const DiscreteJoint& j, const Channel& c) {
  const DiscreteJoint out = apply_channel(j, c);
  const double gap = mutual_information(j) - mutual_information(out);

  // Expected KL between the conditionals of the pre-image state given
  // (evidence, output) and given output alone, under the pre-update joint
  // p(e, x, y) = p(e, x) c(x, y).
  const Eigen::Index ne = j.evidence_size();
  const Eigen::Index ns = j.state_size();
  const Eigen::Index ny = c.output_size();

  // p(x, y) and p(e, y).
  const Eigen::VectorXd px = j.state_marginal();
  const Eigen::VectorXd py_all = out.state_marginal();
  const Eigen::MatrixXd p_xy = px.asDiagonal() * c.rows();
  const Eigen::MatrixXd& p_ey = out.table();

  double bound = 0.0;
  for (Eigen::Index e = 0; e < ne; ++e) {
    for (Eigen::Index y = 0; y < ny; ++y) {
      const double pey = p_ey(e, y);
      if (pey <= 0.0) {
        continue;
      }
      const double py = py_all(y);
      double kl = 0.0;
      for (Eigen::Index x = 0; x < ns; ++x) {
        const double p_exy = j.table()(e, x) * c.rows()(x, y);
        if (p_exy <= 0.0) {
          continue;
        }
        const double post_given_ey = p_exy / pey;
        const double post_given_y = p_xy(x, y) / py;
        kl += post_given_ey * std::log2(post_given_ey / post_given_y);
      }
      bound += pey * clamp_nonneg(kl);
    }
  }
  return {gap, clamp_nonneg(bound)};
}

namespace {

double generator_value(const FGenerator& g, double t) {
  switch (g.name) {
    case FGenerator::Name::kKl:
      return t > 0.0 ? t * std::log(t) : 0.0;
    case FGenerator::Name::kTotalVariation:
      return 0.5 * std::abs(t - 1.0);
    case FGenerator::Name::kChiSquared:
      return (t - 1.0) * (t - 1.0);
    case FGenerator::Name::kHellinger: {
      const double d = std::sqrt(t) - 1.0;
      return d * d;
    }
    case FGenerator::Name::kRenyi:
      return (std::pow(t, g.alpha) - 1.0) / (g.alpha - 1.0);
  }
  throw InvalidGenerator("unknown generator");
}

}  // namespace

double f_divergence(const DiscreteJoint& j, const FGenerator& g) {
  if (g.name == FGenerator::Name::kRenyi && (g.alpha <= 0.0 || g.alpha == 1.0)) {
    throw InvalidGenerator("renyi order must be > 0 and != 1");
  }
  const Eigen::VectorXd pe = j.evidence_marginal();
  const Eigen::VectorXd px = j.state_marginal();
  double d = 0.0;
  for (Eigen::Index e = 0; e < j.evidence_size(); ++e) {
    for (Eigen::Index x = 0; x < j.state_size(); ++x) {
      const double q = pe(e) * px(x);
      if (q <= 0.0) {
        continue;  // the joint cell is zero whenever a marginal is
      }
      d += q * generator_value(g, j.table()(e, x) / q);
    }
  }
  if (g.name == FGenerator::Name::kKl) {
    d /= kLn2;  // nats -> bits, so the kl generator matches mutual_information
  }
  return clamp_nonneg(d);
}

}  // namespace egrlab::infodyn
