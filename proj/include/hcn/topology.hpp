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

#include "hcn/types.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace hcn {

enum class Placement { Rings, Uniform };

struct LayoutConfig {
    Placement placement = Placement::Rings;
    std::uint64_t placement_seed = 0; ///< Uniform placement only
    double macro_radius = 1730.0;
    double sbs_radius = 350.0;
    int n_csbs = 24;
    int n_rsbs = 16;
    int n_hsbs = 9;
    double min_separation = 100.0;
};

struct Site {
    BsKind kind;
    Position position;
    double nominal_radius;
};

struct TierCounts {
    int mbs = 1;
    int csbs = 0;
    int rsbs = 0;
    int hsbs = 0;

    int total() const { return mbs + csbs + rsbs + hsbs; }
};

/// One macro cell. Site 0 is always the MBS; small cells follow in
/// CSBS, RSBS, HSBS order so that a site's index doubles as its BS id.
struct NetworkLayout {
    double macro_radius = 0.0;
    std::vector<Site> sites;
    TierCounts counts;
};

/// Produces the small-cell sites (everything except the MBS).
using PlacementStrategy = std::function<std::vector<Site>(const LayoutConfig&)>;

/// Concentric rings: HSBS at 0.20 R, CSBS at 0.35 R (one third of them) and
/// 0.70 R, RSBS at 0.52 R shifted half a step against the inner CSBS ring.
std::vector<Site> ring_placement(const LayoutConfig& cfg);

/// Uniform-on-disc placement, reproducible from `seed`.
PlacementStrategy uniform_placement(std::uint64_t seed);

/// Throws std::invalid_argument for negative counts or a non-positive
/// radius, and LayoutError naming the first pair closer than min_separation.
/// Uses the strategy selected by cfg.placement.
NetworkLayout build_layout(const LayoutConfig& cfg);
NetworkLayout build_layout(const LayoutConfig& cfg, const PlacementStrategy& placement);

/// Poisson(density) users, i.i.d. uniform on the macro disc centred at the origin.
std::vector<Position> sample_users(double density, double macro_radius, std::mt19937_64& rng);

} // namespace hcn
