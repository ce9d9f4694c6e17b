#pragma once

#include <string>

#include "egrlab/errors.hpp"

namespace egrlab::faith {

// True iff accuracy is preserved within eps while SFS drops by more than
// delta between the two measurement points.
bool detect_trap(double acc_t1, double sfs_t1, double acc_t2, double sfs_t2,
                 double eps, double delta);

enum class DegradationTier { kNone, kDegradation, kTrapProper, kElimination };

std::string to_string(DegradationTier tier);

struct TierThresholds {
  double elimination_sfs_retention = 0.10;
  double trap_acc_retention = 0.85;
  double degradation_sfs_retention = 0.70;
};

// Three-tier spectrum against a baseline condition, by retention ratios:
// elimination below the SFS floor; trap-proper when accuracy is retained
// while SFS is not; degradation when only SFS is lost; none otherwise.
DegradationTier classify_tier(double baseline_acc, double baseline_sfs,
                              double condition_acc, double condition_sfs,
                              const TierThresholds& thresholds = {});

}  // namespace egrlab::faith
