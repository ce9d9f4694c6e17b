#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "egrlab/infodyn/chain.hpp"

namespace egrlab::infodyn {

// A declarative chain description loaded from a JSON config file:
// alphabets, initial joint, step list, seed. Random parts are materialized
// at load time from the spec's seed, so a spec names one concrete chain.
struct ChainSpec {
  Eigen::Index evidence_size = 0;
  Eigen::Index state_size = 0;
  std::uint64_t seed = 0;
  DiscreteJoint init;
  std::vector<ChainStep> steps;
};

ChainSpec load_chain_spec(const std::filesystem::path& path);

// CSV with header round,mi_bits,regime.
void write_trajectory_csv(const ChainTrajectory& t, std::ostream& out);
void write_trajectory_csv(const ChainTrajectory& t, const std::filesystem::path& path);

}  // namespace egrlab::infodyn
