#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "egrlab/errors.hpp"

namespace egrlab::stats {

// Items x raters ratings as 0-based category indices; absent cells are
// unrated.
struct RatingMatrix {
  std::vector<std::string> item_ids;
  std::vector<std::string> rater_ids;
  int num_categories = 0;
  std::string scale_name;  // e.g. "likert-5", "binary"
  std::vector<std::vector<std::optional<int>>> cells;  // [item][rater]

  std::size_t items() const { return item_ids.size(); }
  std::size_t raters() const { return rater_ids.size(); }
  void validate() const;
};

struct FleissResult {
  double kappa;
  double p_bar;
  double p_e;
  int items_used;
  int items_dropped;  // incomplete rows
};

// Standard category-proportion formulation; incomplete items are dropped.
FleissResult fleiss_kappa(const RatingMatrix& m);

// The closed-form step alone, for checking reported aggregates.
double fleiss_kappa_from_aggregates(double p_bar, double p_e);

enum class KappaWeighting { kNone, kQuadratic };

// Cohen's kappa between two raters; values are 0-based category indices in
// [0, num_categories). Quadratic weights serve the ordinal reading.
double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b,
                    KappaWeighting weighting, int num_categories);

struct KappaMatrix {
  std::vector<std::string> rater_ids;
  Eigen::MatrixXd values;                        // symmetric; diagonal 1
  std::vector<std::vector<bool>> present;        // false: insufficient overlap
  std::vector<std::vector<int>> overlap_counts;  // commonly rated items
};

// Pairwise Cohen's kappa over commonly rated items. Pairs with fewer than
// `min_overlap` common items, or a degenerate agreement base, are marked
// missing rather than zero.
KappaMatrix kappa_matrix(const RatingMatrix& m,
                         KappaWeighting weighting = KappaWeighting::kNone,
                         int min_overlap = 2);

}  // namespace egrlab::stats
