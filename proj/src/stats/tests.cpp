#include "egrlab/stats/tests.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "egrlab/rng.hpp"

namespace egrlab::stats {

void PairedSamples::validate() const {
  if (x.size() != y.size()) {
    throw InvalidArgument("paired samples must have equal lengths");
  }
  if (x.empty()) {
    throw InvalidArgument("paired samples must be non-empty");
  }
  if (!ids.empty() && ids.size() != x.size()) {
    throw InvalidArgument("paired sample ids must align with the values");
  }
}

namespace {

// Average ranks of |d|, plus the tie-correction term sum(t^3 - t).
std::pair<std::vector<double>, double> abs_ranks(const std::vector<double>& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(d[a]) < std::abs(d[b]);
  });

  std::vector<double> ranks(n, 0.0);
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) {
      ++j;
    }
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = avg_rank;
    }
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  return {ranks, tie_term};
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

TestResult wilcoxon_signed_rank(const PairedSamples& s, int exact_cutoff) {
  s.validate();

  std::vector<double> d;
  d.reserve(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double diff = s.x[i] - s.y[i];
    if (diff != 0.0) {
      d.push_back(diff);
    }
  }

  TestResult result;
  result.n = static_cast<int>(d.size());
  if (d.empty()) {
    // All differences are zero: no signal, p = 1 by convention.
    result.p_value = 1.0;
    return result;
  }

  const auto [ranks, tie_term] = abs_ranks(d);
  const std::size_t n = d.size();
  double w_plus = 0.0;
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rank_sum += ranks[i];
    if (d[i] > 0.0) {
      w_plus += ranks[i];
    }
  }
  result.statistic = w_plus;

  if (n <= static_cast<std::size_t>(exact_cutoff)) {
    // Enumerate all 2^n sign assignments of the observed |d| ranks.
    const double hi = std::max(w_plus, rank_sum - w_plus);
    const double lo = rank_sum - hi;
    const std::uint64_t total = 1ULL << n;
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      double w = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1ULL << i)) {
          w += ranks[i];
        }
      }
      if (w >= hi - 1e-12 || w <= lo + 1e-12) {
        ++count;
      }
    }
    result.p_value = std::min(1.0, static_cast<double>(count) / static_cast<double>(total));
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
      result.p_value = 1.0;
      return result;
    }
    const double z = (w_plus - mean) / std::sqrt(var);
    result.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
  }
  return result;
}

double cohens_d_paired(const PairedSamples& s) {
  s.validate();
  const std::size_t n = s.x.size();
  if (n < 2) {
    throw InvalidArgument("paired effect size needs at least two pairs");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += s.x[i] - s.y[i];
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = (s.x[i] - s.y[i]) - mean;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) {
    throw ZeroVariance("differences have zero variance");
  }
  return mean / sd;
}

double cohens_d_groups(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw InvalidArgument("group effect size needs at least two values per group");
  }
  const auto mean_of = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const auto ss_of = [](const std::vector<double>& v, double m) {
    double ss = 0.0;
    for (const double x : v) {
      ss += (x - m) * (x - m);
    }
    return ss;
  };
  const double pooled_var = (ss_of(a, ma) + ss_of(b, mb)) /
                            static_cast<double>(a.size() + b.size() - 2);
  if (pooled_var <= 0.0) {
    throw ZeroVariance("pooled variance is zero");
  }
  return (ma - mb) / std::sqrt(pooled_var);
}

std::pair<double, double> bootstrap_ci(
    const std::vector<double>& samples,
    const std::function<double(const std::vector<double>&)>& statistic,
    int resamples, std::uint64_t seed, double level) {
  if (samples.size() < 2) {
    throw InsufficientData("bootstrap needs at least two samples");
  }
  if (resamples < 1) {
    throw InvalidArgument("resamples must be >= 1");
  }
  if (level <= 0.0 || level >= 1.0) {
    throw InvalidArgument("confidence level must be in (0, 1)");
  }

  rng::Engine eng(seed);
  std::vector<double> stats(static_cast<std::size_t>(resamples));
  std::vector<double> draw(samples.size());
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      draw[i] = samples[eng.below(samples.size())];
    }
    stats[static_cast<std::size_t>(r)] = statistic(draw);
  }
  std::sort(stats.begin(), stats.end());
  const double tail = (1.0 - level) / 2.0;
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(stats.size() - 1);
    return stats[static_cast<std::size_t>(std::llround(pos))];
  };
  return {at(tail), at(1.0 - tail)};
}

std::vector<HolmDecision> holm_bonferroni(const std::vector<double>& p_values, double alpha) {
  for (const double p : p_values) {
    if (p < 0.0 || p > 1.0) {
      throw InvalidArgument("p-values must lie in [0, 1]");
    }
  }
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

  std::vector<HolmDecision> decisions(m);
  bool failed = false;
  for (std::size_t rank = 0; rank < m; ++rank) {
    const std::size_t idx = order[rank];
    const double threshold = alpha / static_cast<double>(m - rank);
    if (!failed && p_values[idx] > threshold) {
      failed = true;
    }
    decisions[idx] = HolmDecision{idx, p_values[idx], threshold, !failed};
  }
  return decisions;
}

}  // namespace egrlab::stats
