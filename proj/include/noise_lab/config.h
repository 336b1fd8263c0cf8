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

#ifndef NOISE_LAB_CONFIG_H
#define NOISE_LAB_CONFIG_H

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "noise_lab/code.h"
#include "noise_lab/noise.h"

namespace noise_lab {

inline constexpr const char *kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed run configuration: code block, noise block and the optional
/// measurement-noise block, checked against schema/config.schema.json.
struct Config {
    CodeGroups code;
    NoiseModel model;
    GammaPrimeMode mode = GammaPrimeMode::kAlphabet;
    /// FNV-1a 64 of the raw file bytes, as 16 hex digits.
    std::string hash;
    nlohmann::json raw;
};

std::string fnv1a_hex(const std::string &bytes);

/// Parses and validates. Errors carry "line L, column C" for syntax problems
/// and a JSON path for validation problems.
Config parse_config(const std::string &text);
Config load_config(const std::string &path);

CodeGroups parse_code(const nlohmann::json &j, const std::string &path = "/code");
NoiseModel parse_noise(const nlohmann::json &root, const CodeGroups &code);

}  // namespace noise_lab

#endif
