// Copyright 2026 The Noise Lab Authors
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

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "noise_lab/commands.h"
#include "noise_lab/parallel.h"

int main(int argc, char **argv) {
    using namespace noise_lab;
    CLI::App app{"Logical noise identifiability and estimation from syndrome statistics."};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    long threads = -1;
    app.add_option("--threads", threads, "Worker threads (0 = all cores; falls back to NOISE_LAB_THREADS)");

    std::string config, out;

    auto *check = app.add_subcommand("check", "Decide identifiability of the logical channel");
    check->add_option("config", config, "Config JSON")->required();
    check->add_option("--out", out, "Report path (default stdout)");

    SimulateOptions sim;
    auto *simulate = app.add_subcommand("simulate", "Simulate syndrome rounds");
    simulate->add_option("config", config, "Config JSON")->required();
    simulate->add_option("--rounds", sim.rounds, "Number of rounds")->required();
    simulate->add_option("--seed", sim.seed, "Random seed");
    simulate->add_option("--out", sim.out, "Dataset path")->required();
    simulate->add_option("--csv", sim.csv, "Also write the rows as CSV");

    EstimateOptions est;
    auto *estimate = app.add_subcommand("estimate", "Estimate logical moments and the logical channel");
    estimate->add_option("config", config, "Config JSON")->required();
    auto *data_opt = estimate->add_option("--data", est.data, "Dataset from simulate");
    auto *exact_opt = estimate->add_flag("--exact", est.exact, "Use exact measured moments");
    data_opt->excludes(exact_opt);
    estimate->add_option("--targets", est.targets, "Comma separated logical elements or all-cosets");
    estimate->add_option("--seed", est.seed, "Seed for sampled measurement rows");
    estimate->add_option("--out", out, "Report path (default stdout)");

    std::string targets = "all-cosets";
    auto *orc = app.add_subcommand("oracle", "Brute-force logical moments and channel");
    orc->add_option("config", config, "Config JSON")->required();
    orc->add_option("--targets", targets, "Comma separated logical elements or all-cosets");
    orc->add_option("--out", out, "Report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    if (threads < 0) {
        if (const char *env = std::getenv("NOISE_LAB_THREADS")) {
            threads = std::strtol(env, nullptr, 10);
        }
    }
    set_num_threads(threads < 0 ? 0 : static_cast<size_t>(threads));

    if (*check) {
        return cmd_check(config, out, std::cout, std::cerr);
    }
    if (*simulate) {
        return cmd_simulate(config, sim, std::cout, std::cerr);
    }
    if (*estimate) {
        if (!est.exact && est.data.empty()) {
            std::cerr << "error: estimate needs --exact or --data\n";
            return kExitError;
        }
        return cmd_estimate(config, est, out, std::cout, std::cerr);
    }
    return cmd_oracle(config, targets, out, std::cout, std::cerr);
}
