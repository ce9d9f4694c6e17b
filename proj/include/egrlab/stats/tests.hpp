#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "egrlab/errors.hpp"

namespace egrlab::stats {

struct PairedSamples {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<std::string> ids;  // optional; aligned when present

  void validate() const;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double effect_size = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n = 0;
};

// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
// are dropped; when nothing remains, p = 1 by convention. Exact enumeration
// of the 2^n sign assignments for n <= `exact_cutoff`, normal approximation
// with tie correction above it.
TestResult wilcoxon_signed_rank(const PairedSamples& s, int exact_cutoff = 12);

// Mean difference over the standard deviation of differences.
double cohens_d_paired(const PairedSamples& s);
// Mean difference over the pooled standard deviation of two groups.
double cohens_d_groups(const std::vector<double>& a, const std::vector<double>& b);

// Percentile-method bootstrap interval (2.5 / 97.5 for level 0.95),
// deterministic under the seed.
std::pair<double, double> bootstrap_ci(
    const std::vector<double>& samples,
    const std::function<double(const std::vector<double>&)>& statistic,
    int resamples = 5000, std::uint64_t seed = 0, double level = 0.95);

struct HolmDecision {
  std::size_t index;  // position in the input family
  double p;
  double threshold;  // alpha / (m - rank)
  bool reject;
};

// Step-down Holm-Bonferroni over a family of p-values; decisions returned
// in input order.
std::vector<HolmDecision> holm_bonferroni(const std::vector<double>& p_values,
                                          double alpha = 0.05);

}  // namespace egrlab::stats
