// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_RUNNER_HPP
#define HBIE_RUNNER_HPP

#include <string>

#include "hbie/runconfig.hpp"

namespace hbie::cli {

enum class Command { solve_interior, solve_exterior, eig_scan, verify, converge };

Command parse_command(const std::string& name);

/// Execute a command: writes the CSV and report artifacts named in [output]
/// and returns the process exit status (0 = all requested checks passed,
/// 2 = configuration problem, 3 = incompatible data, 4 = numerical failure).
int run(Command cmd, const RunConfig& cfg);

} // namespace hbie::cli

#endif
