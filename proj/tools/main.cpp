// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdio>

#include "hbie/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"2-D Helmholtz Neumann solver on boundary integral equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    for (const char* name :
         {"solve-interior", "solve-exterior", "eig-scan", "verify", "converge"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--set", overrides, "override single keys, section.key=value");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto cfg = hbie::cli::RunConfig::parse_file(config_path);
        for (const auto& ov : overrides) {
            std::size_t eq = ov.find('=');
            if (eq == std::string::npos)
                throw hbie::cli::ConfigError("--set expects section.key=value");
            cfg.override_key(ov.substr(0, eq), ov.substr(eq + 1));
        }
        auto cmd = hbie::cli::parse_command(app.get_subcommands().front()->get_name());
        return hbie::cli::run(cmd, cfg);
    } catch (const hbie::cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}
