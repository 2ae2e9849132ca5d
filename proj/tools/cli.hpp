#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace psmod1::cli {

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// The process environment.
std::optional<std::string> process_env(const std::string& name);

/// Runs one invocation. Reports go to `out` (or --out), errors to `err` as one JSON
/// object per line. Returns 0 iff the command succeeded and all requested checks passed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env);

}  // namespace psmod1::cli
