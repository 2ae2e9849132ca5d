#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <vector>

#include "psmod1/error.hpp"

namespace psmod1::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Settings parse_config(std::istream& in) {
    Settings out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        require(eq != std::string::npos && eq > 0,
                "config line " + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::replace(key.begin(), key.end(), '_', '-');
        out[key] = trim(t.substr(eq + 1));
    }
    return out;
}

Settings load_config_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open config file " + path);
    return parse_config(in);
}

std::string env_name(const std::string& key) {
    std::string out = "PSMOD1_";
    for (const char c : key) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

Settings settings_from_env(const std::vector<std::string>& keys,
                           const std::function<std::optional<std::string>(const std::string&)>& getenv) {
    Settings out;
    for (const auto& k : keys)
        if (auto v = getenv(env_name(k)); v && !v->empty()) out[k] = *v;
    return out;
}

Settings merge_settings(const Settings& env, const Settings& file, const Settings& flags) {
    Settings out = env;
    for (const auto& [k, v] : file) out[k] = v;
    for (const auto& [k, v] : flags) out[k] = v;
    return out;
}

}  // namespace psmod1::cli
