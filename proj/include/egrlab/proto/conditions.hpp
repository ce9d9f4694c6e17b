#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "egrlab/proto/types.hpp"

namespace egrlab::proto {

ProtocolConfig load_protocol_config(const std::filesystem::path& path);
std::string protocol_config_to_json(const ProtocolConfig& cfg);

// Resolves "C8" against a directory of shipped condition files, or accepts
// a direct path to a config file.
ProtocolConfig resolve_condition(const std::string& id_or_path,
                                 const std::filesystem::path& conditions_dir);

// Condition ids found in a directory, sorted numerically (C1, C2, ... C16).
std::vector<std::string> list_conditions(const std::filesystem::path& conditions_dir);

}  // namespace egrlab::proto
