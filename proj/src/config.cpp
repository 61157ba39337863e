#include "qclab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

bool ConfigSection::has(const std::string& key) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&key](const auto& kv) { return kv.first == key; });
}

const std::string& ConfigSection::get(const std::string& key) const {
    for (const auto& kv : entries) {
        if (kv.first == key) return kv.second;
    }
    throw ConfigError("scenario '" + name + "': missing required key '" + key + "'");
}

std::string ConfigSection::get_or(const std::string& key, const std::string& fallback) const {
    for (const auto& kv : entries) {
        if (kv.first == key) return kv.second;
    }
    return fallback;
}

std::vector<ConfigSection> parse_config(std::istream& in, const std::string& origin) {
    std::vector<ConfigSection> sections;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": unterminated section header");
            ConfigSection s;
            s.name = trim(text.substr(1, text.size() - 2));
            s.line = lineno;
            if (s.name.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": empty section name");
            for (const ConfigSection& prev : sections) {
                if (prev.name == s.name)
                    throw ConfigError(origin + ":" + std::to_string(lineno) +
                                      ": duplicate section '" + s.name + "'");
            }
            sections.push_back(std::move(s));
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        if (sections.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": key outside any [section]");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        sections.back().entries.emplace_back(key, value);
    }
    if (sections.empty()) throw ConfigError(origin + ": no scenario sections found");
    return sections;
}

std::vector<ConfigSection> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_config(in, path);
}

}  // namespace qclab
