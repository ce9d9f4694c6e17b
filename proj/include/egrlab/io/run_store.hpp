#pragma once

#include <filesystem>

#include "egrlab/proto/types.hpp"

namespace egrlab::io {

// A run is a directory holding manifest.json plus trials.jsonl. Loading a
// saved run reproduces the records byte-for-byte when saved again; a
// manifest with a different schema version is a hard error.
void save_run(const proto::RunArtifact& artifact, const std::filesystem::path& dir);
proto::RunArtifact load_run(const std::filesystem::path& dir);

}  // namespace egrlab::io
