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

#include "hcn/simulation.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hcn {

inline constexpr std::string_view kMetricsSchema = "# hcn-sim metrics v1";
inline constexpr std::string_view kMetricsHeader =
    "scheme,lambda_e,density,grid_power_w,grid_power_stderr,sum_rate_bps,sum_rate_stderr,"
    "ee_bits_per_joule,ee_stderr,unconverged_frac,unserved_frac,samples";

/// Schema comment, header, then one line per row in the given order.
void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows);
std::string metrics_csv(const std::vector<MetricsRow>& rows);

enum class Figure { Power, Throughput, EnergyEfficiency };

std::string_view file_stem(Figure figure);

/// Long format: series,scheme,lambda_e,density,value,stderr. One series per
/// (scheme, lambda_e), series sorted by scheme then lambda_e, points by density.
/// Throws std::invalid_argument on empty input.
std::string plot_table(const std::vector<MetricsRow>& rows, Figure figure);

/// gnuplot script drawing every series of plot_table(rows, figure).
std::string plot_script(const std::vector<MetricsRow>& rows, Figure figure);

/// Writes <stem>.csv and <stem>.gp for all three figures into `dir`.
/// Returns the files written.
std::vector<std::filesystem::path> emit_plot_data(const std::vector<MetricsRow>& rows,
                                                  const std::filesystem::path& dir);

} // namespace hcn
