#pragma once

// Experiment configuration files.  The format is the flat slice of TOML
// that experiment descriptions actually need: `key = value` lines, [section]
// headers that prefix subsequent keys with "section.", #-comments, and
// values that are booleans, integers, floats, quoted strings, or one-level
// arrays of those.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/weights.hpp"

namespace vilenkin {

struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
    std::variant<bool, std::int64_t, double, std::string, TomlArray> v;

    bool as_bool() const { return std::get<bool>(v); }
    std::int64_t as_int() const { return std::get<std::int64_t>(v); }
    double as_double() const {
        if (std::holds_alternative<std::int64_t>(v))
            return static_cast<double>(std::get<std::int64_t>(v));
        return std::get<double>(v);
    }
    const std::string& as_string() const { return std::get<std::string>(v); }
    const TomlArray& as_array() const { return std::get<TomlArray>(v); }
};

class TomlTable {
public:
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    const TomlValue& at(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw std::runtime_error("config: missing key \"" + key + "\"");
        return it->second;
    }

    template <typename T>
    T get_or(const std::string& key, T fallback) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        if constexpr (std::is_same_v<T, bool>) return it->second.as_bool();
        else if constexpr (std::is_integral_v<T>) return static_cast<T>(it->second.as_int());
        else if constexpr (std::is_floating_point_v<T>) return static_cast<T>(it->second.as_double());
        else return it->second.as_string();
    }

    void set(std::string key, TomlValue value) { kv_[std::move(key)] = std::move(value); }

private:
    std::map<std::string, TomlValue> kv_;
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Removes a trailing comment, respecting double-quoted strings.
inline std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

TomlValue parse_value(const std::string& text, int line_no);

inline TomlValue parse_scalar(const std::string& text, int line_no) {
    if (text == "true") return {true};
    if (text == "false") return {false};
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"')
        return {text.substr(1, text.size() - 2)};
    const bool floaty = text.find_first_of(".eE") != std::string::npos &&
                        text.find_first_of("0123456789") != std::string::npos;
    try {
        std::size_t used = 0;
        if (!floaty) {
            const std::int64_t n = std::stoll(text, &used);
            if (used == text.size()) return {n};
        }
        const double d = std::stod(text, &used);
        if (used == text.size()) return {d};
    } catch (const std::exception&) {
    }
    throw std::runtime_error("config line " + std::to_string(line_no) +
                             ": cannot parse value \"" + text + "\"");
}

inline TomlValue parse_value(const std::string& text, int line_no) {
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']')
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": unterminated array");
        TomlArray arr;
        std::string body = text.substr(1, text.size() - 2);
        std::string item;
        bool quoted = false;
        for (char c : body) {
            if (c == '"') quoted = !quoted;
            if (c == ',' && !quoted) {
                if (!strip(item).empty()) arr.push_back(parse_scalar(strip(item), line_no));
                item.clear();
            } else {
                item += c;
            }
        }
        if (!strip(item).empty()) arr.push_back(parse_scalar(strip(item), line_no));
        return {std::move(arr)};
    }
    return parse_scalar(text, line_no);
}

}  // namespace detail

inline TomlTable parse_toml(std::istream& in) {
    TomlTable table;
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = detail::strip(detail::strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config line " + std::to_string(line_no) +
                                         ": malformed section header");
            section = detail::strip(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        std::string key = detail::strip(line.substr(0, eq));
        const std::string value = detail::strip(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        if (!section.empty()) key = section + "." + key;
        table.set(std::move(key), detail::parse_value(value, line_no));
    }
    return table;
}

inline TomlTable parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    return parse_toml(in);
}

/// Everything a verification run needs to know.  Defaults describe the Walsh
/// group of 64 points with the full family roster.
struct ExperimentConfig {
    std::vector<int> radices{2, 2, 2, 2, 2, 2};
    std::uint64_t seed = 1;
    int atom_count = 200;
    std::vector<double> p_grid{0.25, 0.4, 0.5};
    std::vector<std::string> families{"fejer",  "riesz",      "cesaro:0.5", "u:0.5",
                                      "v:0.5",  "b:1:1",      "norlund_log"};
    index_t cap_factor = 4;  // sweep orders up to cap_factor * M_N
    double tolerance = 1e-10;
    std::string out_dir;

    GroupSpec group() const { return GroupSpec(radices); }

    std::vector<Family> family_list() const {
        std::vector<Family> fams;
        fams.reserve(families.size());
        for (const std::string& s : families) fams.push_back(Family::parse(s));
        return fams;
    }

    static ExperimentConfig from_table(const TomlTable& t) {
        ExperimentConfig cfg;
        if (t.has("m")) {
            cfg.radices.clear();
            for (const TomlValue& v : t.at("m").as_array())
                cfg.radices.push_back(static_cast<int>(v.as_int()));
        }
        cfg.seed = t.get_or<std::uint64_t>("seed", cfg.seed);
        cfg.atom_count = t.get_or<int>("atom_count", cfg.atom_count);
        if (t.has("p")) {
            cfg.p_grid.clear();
            for (const TomlValue& v : t.at("p").as_array()) cfg.p_grid.push_back(v.as_double());
        }
        if (t.has("families")) {
            cfg.families.clear();
            for (const TomlValue& v : t.at("families").as_array())
                cfg.families.push_back(v.as_string());
        }
        cfg.cap_factor = t.get_or<index_t>("cap_factor", cfg.cap_factor);
        cfg.tolerance = t.get_or<double>("tolerance", cfg.tolerance);
        cfg.out_dir = t.get_or<std::string>("out", cfg.out_dir);
        return cfg;
    }

    static ExperimentConfig from_file(const std::string& path) {
        return from_table(parse_toml_file(path));
    }
};

/// Parses "2,2,2,2" (or "2x2x2x2") into a radix sequence.
inline std::vector<int> parse_radices(const std::string& text) {
    std::vector<int> m;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, text.find('x') != std::string::npos ? 'x' : ',')) {
        const std::string s = detail::strip(item);
        if (s.empty()) continue;
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad radix list: " + text);
        }
        if (used != s.size()) throw std::invalid_argument("bad radix list: " + text);
        m.push_back(v);
    }
    if (m.empty()) throw std::invalid_argument("empty radix list: " + text);
    return m;
}

}  // namespace vilenkin
