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

#include "hcn/topology.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hcn {

namespace {

void place_ring(std::vector<Site>& out, BsKind kind, int count, double radius,
                double angular_offset, double coverage)
{
    const double step = 2.0 * std::numbers::pi / count;
    for (int k = 0; k < count; ++k) {
        const double theta = step * (k + angular_offset);
        out.push_back({kind, Position{radius * std::cos(theta), radius * std::sin(theta)}, coverage});
    }
}

std::string site_label(const NetworkLayout& layout, std::size_t index)
{
    std::ostringstream os;
    os << to_string(layout.sites[index].kind) << '#' << index;
    return os.str();
}

} // namespace

std::string_view to_string(BsKind kind)
{
    switch (kind) {
    case BsKind::Mbs: return "mbs";
    case BsKind::Csbs: return "csbs";
    case BsKind::Rsbs: return "rsbs";
    case BsKind::Hsbs: return "hsbs";
    }
    return "?";
}

std::string_view to_string(BsMode mode)
{
    switch (mode) {
    case BsMode::Active: return "active";
    case BsMode::Sleep: return "sleep";
    case BsMode::Off: return "off";
    }
    return "?";
}

std::string_view to_string(UserClass cls)
{
    switch (cls) {
    case UserClass::Mmu: return "mmu";
    case UserClass::Smu: return "smu";
    case UserClass::Ssu: return "ssu";
    }
    return "?";
}

std::optional<BsKind> parse_bs_kind(std::string_view text)
{
    for (auto kind : {BsKind::Mbs, BsKind::Csbs, BsKind::Rsbs, BsKind::Hsbs})
        if (to_string(kind) == text)
            return kind;
    return std::nullopt;
}

std::vector<Site> ring_placement(const LayoutConfig& cfg)
{
    const double R = cfg.macro_radius;
    const int csbs_inner = cfg.n_csbs / 3;
    const int csbs_outer = cfg.n_csbs - csbs_inner;

    std::vector<Site> sites;
    sites.reserve(cfg.n_csbs + cfg.n_rsbs + cfg.n_hsbs);
    if (csbs_inner > 0)
        place_ring(sites, BsKind::Csbs, csbs_inner, 0.35 * R, 0.0, cfg.sbs_radius);
    if (csbs_outer > 0)
        place_ring(sites, BsKind::Csbs, csbs_outer, 0.70 * R, 0.0, cfg.sbs_radius);
    if (cfg.n_rsbs > 0)
        place_ring(sites, BsKind::Rsbs, cfg.n_rsbs, 0.52 * R, 0.5, cfg.sbs_radius);
    if (cfg.n_hsbs > 0)
        place_ring(sites, BsKind::Hsbs, cfg.n_hsbs, 0.20 * R, 0.0, cfg.sbs_radius);
    return sites;
}

PlacementStrategy uniform_placement(std::uint64_t seed)
{
    return [seed](const LayoutConfig& cfg) {
        std::mt19937_64 rng(seed);
        std::vector<Site> sites;
        auto emit = [&](BsKind kind, int count) {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (int k = 0; k < count; ++k) {
                const double r = cfg.macro_radius * std::sqrt(unit(rng));
                const double theta = 2.0 * std::numbers::pi * unit(rng);
                sites.push_back({kind, Position{r * std::cos(theta), r * std::sin(theta)}, cfg.sbs_radius});
            }
        };
        emit(BsKind::Csbs, cfg.n_csbs);
        emit(BsKind::Rsbs, cfg.n_rsbs);
        emit(BsKind::Hsbs, cfg.n_hsbs);
        return sites;
    };
}

NetworkLayout build_layout(const LayoutConfig& cfg)
{
    if (cfg.placement == Placement::Uniform)
        return build_layout(cfg, uniform_placement(cfg.placement_seed));
    return build_layout(cfg, ring_placement);
}

NetworkLayout build_layout(const LayoutConfig& cfg, const PlacementStrategy& placement)
{
    if (cfg.n_csbs < 0 || cfg.n_rsbs < 0 || cfg.n_hsbs < 0)
        throw std::invalid_argument("tier counts must be non-negative");
    if (!(cfg.macro_radius > 0.0) || !(cfg.sbs_radius > 0.0))
        throw std::invalid_argument("coverage radii must be positive");

    NetworkLayout layout;
    layout.macro_radius = cfg.macro_radius;
    layout.counts = {1, cfg.n_csbs, cfg.n_rsbs, cfg.n_hsbs};
    layout.sites.push_back({BsKind::Mbs, Position::Zero(), cfg.macro_radius});

    // Group by tier so ids are stable regardless of the strategy's emission order.
    auto small = placement(cfg);
    for (auto kind : {BsKind::Csbs, BsKind::Rsbs, BsKind::Hsbs})
        for (const auto& s : small)
            if (s.kind == kind)
                layout.sites.push_back(s);

    for (std::size_t i = 0; i < layout.sites.size(); ++i) {
        if (layout.sites[i].position.norm() > cfg.macro_radius)
            throw LayoutError(site_label(layout, i) + " lies outside the macro cell");
        for (std::size_t j = i + 1; j < layout.sites.size(); ++j) {
            const double d = (layout.sites[i].position - layout.sites[j].position).norm();
            if (d < cfg.min_separation)
                throw LayoutError(site_label(layout, i) + " and " + site_label(layout, j) +
                                  " are closer than min_separation");
        }
    }
    return layout;
}

std::vector<Position> sample_users(double density, double macro_radius, std::mt19937_64& rng)
{
    if (!(density >= 0.0))
        throw std::invalid_argument("user density must be non-negative");
    if (density == 0.0)
        return {};

    const auto count = std::poisson_distribution<long>(density)(rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Position> users;
    users.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        const double r = macro_radius * std::sqrt(unit(rng));
        const double theta = 2.0 * std::numbers::pi * unit(rng);
        users.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
    return users;
}

} // namespace hcn
