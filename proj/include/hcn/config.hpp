// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hcn-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Run configuration: a small TOML-style file with one table per concern.
//
//   [layout]       placement, radii, tier counts, min_separation
//   [power.mbs]    power model of the macro station
//   [power.sbs]    power model shared by all small cells
//   [channel]      path_loss_exponent, fading = "rayleigh" | "none"
//   [algorithm]    u_min, n_th, margin, step, max_iter, ...
//   [sweep]        schemes, densities, lambda_e, samples, seed, ee_estimator
//   [output]       directory, plot_data
//
// Anything left out keeps its default. Unknown keys are rejected.

#include "hcn/simulation.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hcn {

struct OutputConfig {
    std::string directory = "out";
    bool plot_data = true;
};

struct RunConfig {
    ModelConfig model;
    SweepConfig sweep;
    OutputConfig output;
};

/// Carries the dotted key (or "line N" for syntax errors) it refers to.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Parses and validates. Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Range and consistency checks on every field; throws on the first failure.
void validate(const RunConfig& cfg);

/// Complete config in the input format; parse_config(to_toml(c)) == c.
std::string to_toml(const RunConfig& cfg);

std::string_view to_string(EeEstimator estimator);

} // namespace hcn
