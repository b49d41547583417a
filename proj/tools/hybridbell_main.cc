// Copyright 2026 The hybridbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "CLI11.hpp"
#include "hybridbell/cli.h"

int main(int argc, char **argv) {
    using namespace hybridbell;

    CLI::App app{"Heralded microwave-optical Bell pairs: simulation and resource estimates"};
    app.set_help_flag("-h,--help", "Print this help message and exit");
    std::string scenario;
    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed = 0;
    bool list_keys = false;

    app.add_option("scenario", scenario, "simulate, sweep-swap, bell, budget, graph, count or validate")
        ->check(CLI::IsMember(scenario_names()));
    app.add_option("--config", config_path, "key = value parameter file (empty: all defaults)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "seed for every random draw");
    app.add_flag("--list-keys", list_keys, "print the accepted config keys and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    if (list_keys) {
        for (const auto &k : config_keys()) {
            std::cout << k.name << "  " << k.help << "\n";
        }
        return kExitOk;
    }
    if (scenario.empty()) {
        std::cerr << "missing scenario\n" << app.help();
        return kExitConfig;
    }

    RunConfig cfg;
    cfg.scenario = scenario;
    cfg.output_dir = out_dir;
    cfg.seed = seed;
    if (!config_path.empty()) {
        try {
            cfg.entries = read_config_file(config_path);
        } catch (const ConfigError &e) {
            std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
            return kExitConfig;
        }
    }
    return run(cfg, std::cout, std::cerr);
}
