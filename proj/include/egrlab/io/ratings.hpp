#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "egrlab/stats/kappa.hpp"

namespace egrlab::io {

struct RatingRecord {
  std::string rater_id;
  std::string item_id;
  int q1 = 0;        // Likert 1..5
  bool q2 = false;   // unsupported-claim flag
  std::string cohort;
};

// Both items-x-raters pivots of one rating file: the Likert faithfulness
// scale and the binary unsupported-claim flag.
struct RatingData {
  std::vector<RatingRecord> records;
  stats::RatingMatrix q1;  // categories 0..4 for Likert 1..5
  stats::RatingMatrix q2;  // categories 0 (N) / 1 (Y)
};

// CSV with header rater_id,item_id,q1,q2,cohort. Out-of-range q1 raises
// OutOfRange; missing cells stay absent and are handled per-statistic.
RatingData load_ratings(const std::filesystem::path& path);

}  // namespace egrlab::io
