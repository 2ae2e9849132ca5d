#pragma once

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>

namespace psmod1::cli {

/// Effective key=value settings. Keys use dashes ("q-max"); sorted iteration
/// keeps output headers stable.
using Settings = std::map<std::string, std::string>;

/// key=value lines; blank lines and lines starting with '#' are skipped.
Settings parse_config(std::istream& in);
Settings load_config_file(const std::string& path);

/// Looks up PSMOD1_<KEY> (upper case, '-' as '_') for every key in `keys`.
Settings settings_from_env(const std::vector<std::string>& keys,
                           const std::function<std::optional<std::string>(const std::string&)>& getenv);

/// flags over file over environment
Settings merge_settings(const Settings& env, const Settings& file, const Settings& flags);

std::string env_name(const std::string& key);

}  // namespace psmod1::cli
