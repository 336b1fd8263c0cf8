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

#ifndef NOISE_LAB_COMMANDS_H
#define NOISE_LAB_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "noise_lab/config.h"

namespace noise_lab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotIdentifiable = 2;

/// Exit code plus the machine-readable report.
struct CommandOutput {
    int exit_code = kExitOk;
    nlohmann::json report;
};

struct SimulateOptions {
    uint64_t rounds = 0;
    uint64_t seed = 0;
    /// Binary dataset path; the sidecar goes to `out` + ".json".
    std::string out;
    std::string csv;
};

struct EstimateOptions {
    /// Dataset path. Empty means exact input moments.
    std::string data;
    bool exact = false;
    /// Comma separated logical elements, or "all-cosets".
    std::string targets = "all-cosets";
    /// Seed for the measurement rows when M is too large to enumerate.
    uint64_t seed = 0;
};

CommandOutput run_check(const Config &cfg);
CommandOutput run_simulate(const Config &cfg, const SimulateOptions &options);
CommandOutput run_estimate(const Config &cfg, const EstimateOptions &options);
CommandOutput run_oracle(const Config &cfg, const std::string &targets = "all-cosets");

/// File-level wrappers used by the executable. They load the config, write the
/// report to `out_path` (or `out` when empty) and turn exceptions into exit 1
/// with a diagnostic on `err`.
int cmd_check(const std::string &config_path, const std::string &out_path, std::ostream &out, std::ostream &err);
int cmd_simulate(const std::string &config_path, const SimulateOptions &options, std::ostream &out, std::ostream &err);
int cmd_estimate(
    const std::string &config_path, const EstimateOptions &options, const std::string &out_path, std::ostream &out,
    std::ostream &err);
int cmd_oracle(
    const std::string &config_path, const std::string &targets, const std::string &out_path, std::ostream &out,
    std::ostream &err);

}  // namespace noise_lab

#endif
