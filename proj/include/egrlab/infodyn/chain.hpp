#pragma once

#include <string>
#include <variant>
#include <vector>

#include "egrlab/infodyn/distributions.hpp"
#include "egrlab/infodyn/information.hpp"

namespace egrlab::infodyn {

// Surjective map from state symbols onto K verdict symbols.
struct VoteMap {
  std::vector<Eigen::Index> verdict_of_state;
  Eigen::Index verdict_count;
};

using ChainStep = std::variant<Channel, EvidenceAugmentChannel, VoteMap>;

enum class Regime { kClosed, kOpen, kVoteCollapsed };

std::string to_string(Regime r);

struct ChainTrajectory {
  std::vector<double> mi_per_round;  // bits; length = steps + 1
  Regime regime;
  int rounds() const { return static_cast<int>(mi_per_round.size()) - 1; }
};

// Closed-system round: p(e,y) = sum_x p(e,x) c[x][y]. Evidence marginal is
// untouched; mutual information cannot increase.
DiscreteJoint apply_channel(const DiscreteJoint& j, const Channel& c);

// Open-system round: the state alphabet becomes (state x auxiliary) with
// p(e, (x,a)) = p(e,x) * a_rows[(e,x)][a]. Mutual information cannot
// decrease because the old state is retained as a component.
DiscreteJoint augment_open(const DiscreteJoint& j, const EvidenceAugmentChannel& a);

// Collapse the state alphabet onto K verdicts. Output MI <= log2 K and
// <= input MI.
DiscreteJoint vote_collapse(const DiscreteJoint& j, const VoteMap& vote);

// Runs the step list from `init`, recording MI after every round.
// mi_per_round[0] is MI(init). Regime: open if any open step is present,
// vote-collapsed if the chain is closed but contains a vote step, closed
// otherwise.
ChainTrajectory run_chain(const DiscreteJoint& init, const std::vector<ChainStep>& steps);

}  // namespace egrlab::infodyn
