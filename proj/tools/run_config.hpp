#pragma once

#include <string>

#include <json.hpp>

#include "specgraph/gms.hpp"
#include "specgraph/procgen.hpp"

namespace specgraph::cli {

/// Load a config file and validate it against the per-command schema:
/// "version" must equal 1 and unknown keys are rejected.
nlohmann::json load_config(const std::string& path, const std::string& command);

/// Validate an already-parsed config (exposed for tests).
void validate_config(const nlohmann::json& cfg, const std::string& command);

ProcessModel model_from_json(const nlohmann::json& j);
GmsConfig gms_from_json(const nlohmann::json& j);

}  // namespace specgraph::cli
