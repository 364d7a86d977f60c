#pragma once

#include "heliox/errors.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heliox::io {

using json = nlohmann::ordered_json;

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"eos",     "bubble",   "spectrum",
                                                "drive",   "two-photon", "cavity",
                                                "entangle", "expand2s"};
    return names;
}

struct OptionSpec {
    enum class Type { number, integer, boolean, string };
    Type type = Type::number;
    json default_value;
    bool sweepable = false; // may be {"start":..,"stop":..,"count":..}
    std::string help;
};

// ordered: echo and CLI option order stay stable
using Schema = std::vector<std::pair<std::string, OptionSpec>>;

const Schema& schema_for(const std::string& scenario);

json load_config_file(const std::string& path);

// Strict resolution: file values, then CLI overrides, then defaults.  Any
// unknown key fails naming the key; type mismatches fail; sweep objects are
// accepted only for sweepable keys.
json resolve_config(const std::string& scenario, const json& file_config,
                    const std::vector<std::pair<std::string, std::string>>& overrides);

struct Sweep {
    double start = 0.0, stop = 0.0;
    int count = 1;
    std::vector<double> points() const;
};

bool is_sweep(const json& value);
Sweep parse_sweep(const json& value);

// scalar-or-sweep accessor
std::vector<double> sweep_points(const json& resolved, const std::string& key);

} // namespace heliox::io
