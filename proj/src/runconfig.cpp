// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include "hbie/runconfig.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace hbie::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// '#' comments anywhere; ';' comments only lead a line (it separates points
// inside values)
std::string strip_comment(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t");
    if (first != std::string::npos && s[first] == ';') return "";
    std::size_t hash = s.find('#');
    return hash == std::string::npos ? s : s.substr(0, hash);
}

} // namespace

Complex parse_complex(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty complex value");
    // forms: a | a+bi | a-bi  (the trailing i marks the imaginary part)
    if (t.back() == 'i') {
        std::string body = t.substr(0, t.size() - 1);
        std::size_t pos = body.find_last_of("+-");
        if (pos == std::string::npos || pos == 0)
            throw ConfigError("cannot parse complex value '" + text + "'");
        char* end = nullptr;
        double re = std::strtod(body.substr(0, pos).c_str(), &end);
        std::string imtext = body.substr(pos);
        if (imtext == "+") imtext = "1";
        if (imtext == "-") imtext = "-1";
        double im = std::strtod(imtext.c_str(), &end);
        return {re, im};
    }
    char* end = nullptr;
    double re = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
        throw ConfigError("cannot parse number '" + text + "'");
    return {re, 0.0};
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

RunConfig RunConfig::parse_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": empty section name");
            cfg.sections_[section];
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

void RunConfig::override_key(const std::string& dotted, const std::string& value) {
    std::size_t dot = dotted.find('.');
    std::string section = dot == std::string::npos ? "" : dotted.substr(0, dot);
    std::string key = dot == std::string::npos ? dotted : dotted.substr(dot + 1);
    if (key.empty()) throw ConfigError("override '" + dotted + "': empty key");
    sections_[section][key] = value;
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return fallback;
    auto jt = it->second.find(key);
    return jt == it->second.end() ? fallback : jt->second;
}

std::string RunConfig::require(const std::string& section, const std::string& key) const {
    if (!has(section, key))
        throw ConfigError(origin_ + ": missing required key [" + section + "] " + key);
    return get(section, key, "");
}

double RunConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    if (!has(section, key)) return fallback;
    return require_double(section, key);
}

double RunConfig::require_double(const std::string& section, const std::string& key) const {
    std::string v = require(section, key);
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("[" + section + "] " + key + ": cannot parse number '" + v + "'");
    return x;
}

int RunConfig::get_int(const std::string& section, const std::string& key,
                       int fallback) const {
    if (!has(section, key)) return fallback;
    double x = require_double(section, key);
    int ix = int(x);
    if (double(ix) != x)
        throw ConfigError("[" + section + "] " + key + ": expected an integer");
    return ix;
}

Complex RunConfig::get_complex(const std::string& section, const std::string& key,
                               Complex fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return parse_complex(require(section, key));
    } catch (const ConfigError& e) {
        throw ConfigError("[" + section + "] " + key + ": " + e.what());
    }
}

Eigen::Vector2d RunConfig::get_point(const std::string& section, const std::string& key,
                                     Eigen::Vector2d fallback) const {
    if (!has(section, key)) return fallback;
    std::istringstream in(require(section, key));
    double x, y;
    if (!(in >> x >> y))
        throw ConfigError("[" + section + "] " + key + ": expected 'x y'");
    return {x, y};
}

std::vector<Eigen::Vector2d> RunConfig::get_points(const std::string& section,
                                                   const std::string& key) const {
    std::vector<Eigen::Vector2d> out;
    if (!has(section, key)) return out;
    std::string all = get(section, key, "");
    std::size_t start = 0;
    while (start <= all.size()) {
        std::size_t semi = all.find(';', start);
        std::string piece = semi == std::string::npos ? all.substr(start)
                                                      : all.substr(start, semi - start);
        piece = trim(piece);
        if (!piece.empty()) {
            std::istringstream in(piece);
            double x, y;
            if (!(in >> x >> y))
                throw ConfigError("[" + section + "] " + key +
                                  ": expected 'x y' pairs separated by ';'");
            out.emplace_back(x, y);
        }
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

std::vector<double> RunConfig::get_double_list(const std::string& section,
                                               const std::string& key) const {
    std::vector<double> out;
    if (!has(section, key)) return out;
    std::istringstream in(get(section, key, ""));
    double x;
    while (in >> x) out.push_back(x);
    if (!in.eof())
        throw ConfigError("[" + section + "] " + key + ": expected a list of numbers");
    return out;
}

std::string RunConfig::canonical() const {
    std::ostringstream out;
    for (const auto& [sec, kv] : sections_)
        for (const auto& [k, v] : kv) out << sec << '.' << k << '=' << v << '\n';
    return out.str();
}

std::string RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace hbie::cli
