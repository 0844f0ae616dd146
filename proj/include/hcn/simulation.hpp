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

#include "hcn/association.hpp"
#include "hcn/network.hpp"
#include "hcn/topology.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

namespace hcn {

struct ChannelConfig {
    double path_loss_exponent = 3.5;
    bool deterministic_fading = false; ///< h = 1 on every link
};

/// Everything that defines one network snapshot apart from the sweep axes.
struct ModelConfig {
    LayoutConfig layout;
    PowerModel macro = macro_power_defaults();
    PowerModel small_cell = small_cell_power_defaults();
    ChannelConfig channel;
    AlgoParams algo;
};

enum class EeEstimator { RatioOfMeans, MeanOfRatios };

struct SweepConfig {
    std::vector<SchemeKind> schemes{SchemeKind::NearestBs, SchemeKind::Joint, SchemeKind::ProposedJoint};
    std::vector<double> densities{0, 50, 100, 200, 300, 400, 600, 800, 1000};
    std::vector<double> lambda_e{44.0, 45.0};
    int samples = 5000;
    std::uint64_t seed = 1;
    EeEstimator ee_estimator = EeEstimator::RatioOfMeans;
};

/// Random inputs of one sample. Independent of the arrival rate and the
/// scheme, so every (scheme, lambda_e) cell at a density sees the same draw.
struct SampleDraw {
    std::vector<Position> users;
    Eigen::MatrixXd fading;               ///< users x stations
    std::vector<double> harvest_uniform;  ///< one per station, used by EH tiers
    std::shared_ptr<const Geometry> geometry;
};

struct SampleOutcome {
    double grid_power = 0.0;
    double sum_rate = 0.0;
    bool converged = true;
    int users = 0;
    int unserved = 0;
    int causality_violations = 0; ///< Active RSBS consuming more than it harvested
    int iterations = 0;
};

struct Estimate {
    double mean = 0.0;
    double stderr_mean = 0.0;
};

struct MetricsRow {
    SchemeKind scheme = SchemeKind::NearestBs;
    double density = 0.0;
    double lambda_e = 0.0;
    Estimate grid_power;
    Estimate sum_rate;
    Estimate energy_efficiency;
    double unconverged_fraction = 0.0;
    double unserved_fraction = 0.0;
    int samples = 0;
    long causality_violations = 0;
};

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Per-sample seed: master -> density cell -> sample index.
std::uint64_t sample_seed(std::uint64_t master, double density, std::uint64_t sample_index);

SampleDraw draw_sample(const ModelConfig& cfg, const NetworkLayout& layout, double density, std::uint64_t seed);

/// Stations at nominal settings with this slot's harvest filled in.
NetworkState prepare_state(const ModelConfig& cfg, const NetworkLayout& layout, const SampleDraw& draw,
                           double lambda_e);

/// Runs one scheme on a prepared state and measures grid power and sum rate.
SampleOutcome evaluate(const NetworkState& state, SchemeKind scheme, const AlgoParams& params);

/// Same as calling evaluate() per scheme, but the two joint schemes share
/// their power-control stage.
std::vector<SampleOutcome> evaluate_schemes(const NetworkState& state, const std::vector<SchemeKind>& schemes,
                                            const AlgoParams& params);

SampleOutcome run_sample(const ModelConfig& cfg, SchemeKind scheme, double density, double lambda_e,
                         std::uint64_t seed);

/// Mean and standard error. Energy efficiency uses the chosen estimator;
/// for the ratio of means the error comes from the delta method.
MetricsRow aggregate(SchemeKind scheme, double density, double lambda_e, const std::vector<SampleOutcome>& samples,
                     EeEstimator estimator);

struct SweepControl {
    int threads = 1;
    const std::atomic<bool>* cancel = nullptr;
    /// Called after each density finishes, with that density's rows.
    std::function<void(const std::vector<MetricsRow>&)> on_density_done;
};

struct SweepResult {
    std::vector<MetricsRow> rows; ///< sorted by (scheme, lambda_e, density)
    bool complete = true;
};

/// Aggregates `samples` draws per (scheme, density, lambda_e) cell. Output is
/// identical for any thread count.
SweepResult run_sweep(const ModelConfig& cfg, const SweepConfig& sweep, const SweepControl& control = {});

void sort_rows(std::vector<MetricsRow>& rows);

} // namespace hcn
