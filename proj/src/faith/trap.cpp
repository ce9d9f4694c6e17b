#include "egrlab/faith/trap.hpp"

namespace egrlab::faith {

bool detect_trap(double acc_t1, double sfs_t1, double acc_t2, double sfs_t2,
                 double eps, double delta) {
  if (eps <= 0.0 || delta <= 0.0) {
    throw InvalidArgument("trap tolerances must be positive");
  }
  return acc_t2 >= acc_t1 - eps && sfs_t2 < sfs_t1 - delta;
}

std::string to_string(DegradationTier tier) {
  switch (tier) {
    case DegradationTier::kNone:
      return "none";
    case DegradationTier::kDegradation:
      return "degradation";
    case DegradationTier::kTrapProper:
      return "trap-proper";
    case DegradationTier::kElimination:
      return "elimination";
  }
  return "none";
}

DegradationTier classify_tier(double baseline_acc, double baseline_sfs,
                              double condition_acc, double condition_sfs,
                              const TierThresholds& thresholds) {
  if (baseline_sfs <= 0.0) {
    throw DegenerateBaseline("baseline SFS must be positive to classify retention");
  }
  const double sfs_retention = condition_sfs / baseline_sfs;
  const double acc_retention = baseline_acc > 0.0 ? condition_acc / baseline_acc : 1.0;
  if (sfs_retention < thresholds.elimination_sfs_retention) {
    return DegradationTier::kElimination;
  }
  if (sfs_retention < thresholds.degradation_sfs_retention) {
    return acc_retention >= thresholds.trap_acc_retention ? DegradationTier::kTrapProper
                                                          : DegradationTier::kDegradation;
  }
  return DegradationTier::kNone;
}

}  // namespace egrlab::faith
