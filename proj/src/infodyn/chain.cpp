#include "egrlab/infodyn/chain.hpp"

#include <algorithm>

namespace egrlab::infodyn {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kClosed:
      return "closed";
    case Regime::kOpen:
      return "open";
    case Regime::kVoteCollapsed:
      return "vote-collapsed";
  }
  return "unknown";
}

DiscreteJoint apply_channel(const DiscreteJoint& j, const Channel& c) {
  if (c.input_size() != j.state_size()) {
    throw ShapeMismatch("channel input alphabet does not match the joint's state alphabet");
  }
  return DiscreteJoint(j.table() * c.rows());
}

DiscreteJoint augment_open(const DiscreteJoint& j, const EvidenceAugmentChannel& a) {
  if (a.evidence_size() != j.evidence_size() || a.state_size() != j.state_size()) {
    throw ShapeMismatch("augment channel alphabets do not match the joint");
  }
  const Eigen::Index ne = j.evidence_size();
  const Eigen::Index ns = j.state_size();
  const Eigen::Index na = a.aux_size();
  Eigen::MatrixXd table(ne, ns * na);
  for (Eigen::Index e = 0; e < ne; ++e) {
    for (Eigen::Index x = 0; x < ns; ++x) {
      const double p = j.table()(e, x);
      for (Eigen::Index aux = 0; aux < na; ++aux) {
        table(e, x * na + aux) = p * a.rows()(e * ns + x, aux);
      }
    }
  }
  return DiscreteJoint(std::move(table));
}

DiscreteJoint vote_collapse(const DiscreteJoint& j, const VoteMap& vote) {
  if (static_cast<Eigen::Index>(vote.verdict_of_state.size()) != j.state_size()) {
    throw ShapeMismatch("vote map must be total over the state alphabet");
  }
  if (vote.verdict_count < 2) {
    throw ShapeMismatch("vote map needs at least 2 verdicts");
  }
  std::vector<bool> hit(static_cast<std::size_t>(vote.verdict_count), false);
  for (const Eigen::Index v : vote.verdict_of_state) {
    if (v < 0 || v >= vote.verdict_count) {
      throw ShapeMismatch("vote map assigns an out-of-range verdict");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
    throw ShapeMismatch("vote map must be surjective onto the verdict alphabet");
  }
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(j.evidence_size(), vote.verdict_count);
  for (Eigen::Index x = 0; x < j.state_size(); ++x) {
    table.col(vote.verdict_of_state[static_cast<std::size_t>(x)]) += j.table().col(x);
  }
  return DiscreteJoint(std::move(table));
}

ChainTrajectory run_chain(const DiscreteJoint& init, const std::vector<ChainStep>& steps) {
  ChainTrajectory traj;
  traj.mi_per_round.reserve(steps.size() + 1);
  traj.mi_per_round.push_back(mutual_information(init));

  bool any_open = false;
  bool any_vote = false;
  DiscreteJoint current = init;
  for (const ChainStep& step : steps) {
    if (const auto* closed = std::get_if<Channel>(&step)) {
      current = apply_channel(current, *closed);
    } else if (const auto* open = std::get_if<EvidenceAugmentChannel>(&step)) {
      current = augment_open(current, *open);
      any_open = true;
    } else {
      current = vote_collapse(current, std::get<VoteMap>(step));
      any_vote = true;
    }
    traj.mi_per_round.push_back(mutual_information(current));
  }
  traj.regime = any_open ? Regime::kOpen
                         : (any_vote ? Regime::kVoteCollapsed : Regime::kClosed);
  return traj;
}

}  // namespace egrlab::infodyn
