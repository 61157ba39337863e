#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace qclab {

// Flat declarative configuration: one [section] per scenario, key = value
// lines, '#' comments. No interpolation, no scripting.
struct ConfigSection {
    std::string name;
    int line = 0;
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
};

std::vector<ConfigSection> parse_config(std::istream& in, const std::string& origin);
std::vector<ConfigSection> parse_config_file(const std::string& path);

}  // namespace qclab
