// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_RUNCONFIG_HPP
#define HBIE_RUNCONFIG_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hbie/common.hpp"

namespace hbie::cli {

/// Configuration file or command-line problem: reported with exit status 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Parsed key-value configuration with INI-style sections.
///
/// Grammar per line: blank, comment (# or ;), [section], or key = value.
/// Anything else fails with a line-numbered message.  Keys outside a section
/// live in the "" section.  --set section.key=value overrides single keys.
class RunConfig {
public:
    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_text(const std::string& text, const std::string& origin);

    void override_key(const std::string& dotted, const std::string& value);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    std::string require(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    double require_double(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    Complex get_complex(const std::string& section, const std::string& key,
                        Complex fallback) const;
    Eigen::Vector2d get_point(const std::string& section, const std::string& key,
                              Eigen::Vector2d fallback) const;
    /// semicolon-separated list of "x y" pairs
    std::vector<Eigen::Vector2d> get_points(const std::string& section,
                                            const std::string& key) const;
    std::vector<double> get_double_list(const std::string& section,
                                        const std::string& key) const;

    /// canonical serialization (sorted sections and keys), used for hashing
    std::string canonical() const;
    /// FNV-1a hash of the canonical form
    std::string hash() const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    std::string origin_;
};

Complex parse_complex(const std::string& text);

} // namespace hbie::cli

#endif
