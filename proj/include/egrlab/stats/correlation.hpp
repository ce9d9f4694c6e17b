#pragma once

#include <vector>

#include "egrlab/errors.hpp"

namespace egrlab::stats {

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Pearson on average ranks (ties share their rank mean).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Average ranks, 1-based.
std::vector<double> average_ranks(const std::vector<double>& v);

}  // namespace egrlab::stats
