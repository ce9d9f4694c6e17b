#include "egrlab/stats/kappa.hpp"

#include <cmath>

namespace egrlab::stats {

void RatingMatrix::validate() const {
  if (num_categories < 2) {
    throw InvalidArgument("rating scale needs at least two categories");
  }
  if (rater_ids.size() < 2) {
    throw InvalidArgument("agreement statistics need at least two raters");
  }
  if (cells.size() != item_ids.size()) {
    throw InvalidArgument("rating matrix rows must match the item list");
  }
  for (const auto& row : cells) {
    if (row.size() != rater_ids.size()) {
      throw InvalidArgument("rating matrix columns must match the rater list");
    }
    for (const auto& cell : row) {
      if (cell && (*cell < 0 || *cell >= num_categories)) {
        throw OutOfRange("rating outside the declared scale");
      }
    }
  }
}

double fleiss_kappa_from_aggregates(double p_bar, double p_e) {
  if (p_e >= 1.0) {
    throw DegenerateAgreementBase("expected agreement is 1; kappa undefined");
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

FleissResult fleiss_kappa(const RatingMatrix& m) {
  m.validate();

  const int raters = static_cast<int>(m.raters());
  std::vector<double> category_totals(static_cast<std::size_t>(m.num_categories), 0.0);
  double p_sum = 0.0;
  int used = 0;
  int dropped = 0;
  for (const auto& row : m.cells) {
    bool complete = true;
    std::vector<int> counts(static_cast<std::size_t>(m.num_categories), 0);
    for (const auto& cell : row) {
      if (!cell) {
        complete = false;
        break;
      }
      ++counts[static_cast<std::size_t>(*cell)];
    }
    if (!complete) {
      ++dropped;
      continue;
    }
    ++used;
    double agree = 0.0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      agree += static_cast<double>(counts[c]) * (counts[c] - 1);
      category_totals[c] += counts[c];
    }
    p_sum += agree / (static_cast<double>(raters) * (raters - 1));
  }
  if (used == 0) {
    throw InsufficientData("no fully rated items for Fleiss kappa");
  }

  const double p_bar = p_sum / used;
  double p_e = 0.0;
  const double total_ratings = static_cast<double>(used) * raters;
  for (const double t : category_totals) {
    const double share = t / total_ratings;
    p_e += share * share;
  }
  return {fleiss_kappa_from_aggregates(p_bar, p_e), p_bar, p_e, used, dropped};
}

double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b,
                    KappaWeighting weighting, int num_categories) {
  if (a.size() != b.size()) {
    throw InvalidArgument("paired ratings must have equal lengths");
  }
  if (a.empty()) {
    throw InvalidArgument("paired ratings must be non-empty");
  }
  if (num_categories < 2) {
    throw InvalidArgument("kappa needs at least two categories");
  }
  const std::size_t k = static_cast<std::size_t>(num_categories);
  Eigen::MatrixXd observed = Eigen::MatrixXd::Zero(num_categories, num_categories);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= num_categories || b[i] < 0 || b[i] >= num_categories) {
      throw OutOfRange("rating outside the declared scale");
    }
    observed(a[i], b[i]) += 1.0;
  }
  observed /= static_cast<double>(a.size());
  const Eigen::VectorXd row_marg = observed.rowwise().sum();
  const Eigen::VectorXd col_marg = observed.colwise().sum().transpose();

  Eigen::MatrixXd penalty(num_categories, num_categories);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (weighting == KappaWeighting::kNone) {
        penalty(i, j) = i == j ? 0.0 : 1.0;
      } else {
        const double d = static_cast<double>(i) - static_cast<double>(j);
        const double span = static_cast<double>(num_categories - 1);
        penalty(i, j) = (d * d) / (span * span);
      }
    }
  }

  double observed_penalty = 0.0;
  double expected_penalty = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      observed_penalty += penalty(i, j) * observed(i, j);
      expected_penalty += penalty(i, j) * row_marg(i) * col_marg(j);
    }
  }
  if (expected_penalty == 0.0) {
    throw DegenerateAgreementBase("expected agreement is 1; kappa undefined");
  }
  return 1.0 - observed_penalty / expected_penalty;
}

KappaMatrix kappa_matrix(const RatingMatrix& m, KappaWeighting weighting, int min_overlap) {
  m.validate();
  const std::size_t r = m.raters();
  KappaMatrix out;
  out.rater_ids = m.rater_ids;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  out.present.assign(r, std::vector<bool>(r, false));
  out.overlap_counts.assign(r, std::vector<int>(r, 0));

  for (std::size_t i = 0; i < r; ++i) {
    out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    out.present[i][i] = true;
    for (std::size_t j = i + 1; j < r; ++j) {
      std::vector<int> a;
      std::vector<int> b;
      for (const auto& row : m.cells) {
        if (row[i] && row[j]) {
          a.push_back(*row[i]);
          b.push_back(*row[j]);
        }
      }
      out.overlap_counts[i][j] = out.overlap_counts[j][i] = static_cast<int>(a.size());
      if (static_cast<int>(a.size()) < min_overlap) {
        continue;  // marked missing, not zero
      }
      double kappa = 0.0;
      try {
        kappa = cohens_kappa(a, b, weighting, m.num_categories);
      } catch (const DegenerateAgreementBase&) {
        continue;
      }
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kappa;
      out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = kappa;
      out.present[i][j] = out.present[j][i] = true;
    }
  }
  return out;
}

}  // namespace egrlab::stats
