#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace sharpfw {

/// Names of the built-in experiments, sorted.
std::vector<std::string> scenario_names();

/// Config document of a built-in experiment; parse it with parse_config.
/// Throws InvalidArgument for an unknown name.
nlohmann::json scenario_config(const std::string& name);

}  // namespace sharpfw
