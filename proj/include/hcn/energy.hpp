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

#include <random>
#include <span>

namespace hcn {

/// Load-dependent BS power, P = P_c + beta * (w / W) * P_t while Active.
/// The slot is one second long, so watts and joules per slot coincide.
struct PowerModel {
    double p_const = 38.0;        ///< baseband and cooling, W
    double beta = 5.5;            ///< inverse power-amplifier efficiency
    double p_tx_nominal = 30.0;   ///< transmit power at the nominal coverage radius, W
    double p_tx_min = 1.0;
    double p_tx_max = 30.0;
    double total_bandwidth = 5e6; ///< Hz
    int n_subcarriers = 500;
    double sleep_power = 0.0;     ///< draw in Sleep mode, W

    double subcarrier_bandwidth() const { return total_bandwidth / n_subcarriers; }
};

PowerModel macro_power_defaults();
PowerModel small_cell_power_defaults();

/// Throws std::invalid_argument describing the first violated bound.
void validate(const PowerModel& model);

struct BaseStation {
    int id = 0;
    BsKind kind = BsKind::Mbs;
    Position position = Position::Zero();
    double nominal_radius = 0.0;
    BsMode mode = BsMode::Active;
    double p_tx = 0.0;
    PowerModel model;
    double harvested = 0.0;      ///< J in the current slot, EH tiers only
    double used_bandwidth = 0.0; ///< Hz
    int users = 0;

    bool active() const { return mode == BsMode::Active; }
    bool harvests() const { return kind == BsKind::Rsbs || kind == BsKind::Hsbs; }
    int capacity(int subcarriers_per_user) const { return model.n_subcarriers / subcarriers_per_user; }
};

/// Per-slot energy balance of an energy-harvesting station.
struct EnergyLedger {
    double harvested = 0.0;
    double consumed = 0.0;
    double margin = 1.0;
    double delta = 0.0;

    bool within_margin() const { return delta >= 0.0 && delta <= margin; }
};

/// Modes each tier may occupy: MBS {Active}, CSBS {Active, Sleep},
/// RSBS {Active, Off}, HSBS {Active}.
bool mode_allowed(BsKind kind, BsMode mode);

/// Poisson(rate) count of 1 J packets by inverse-CDF lookup of `uniform`.
/// Monotone in `rate` for a fixed `uniform`, which is what lets runs at
/// different arrival rates share draws. Requires 0 <= rate <= 700.
double harvest_energy(double rate, double uniform);
double harvest_energy(double rate, std::mt19937_64& rng);

/// Load-dependent consumption; Sleep draws sleep_power and Off draws nothing.
/// Throws AllocationError when used_bandwidth exceeds the model bandwidth.
double bs_power(const BaseStation& bs, double used_bandwidth);
inline double bs_power(const BaseStation& bs) { return bs_power(bs, bs.used_bandwidth); }

/// RF share of consumption, beta * (w / W) * P_t, for the RF-only ledger reading.
double rf_power(const BaseStation& bs, double used_bandwidth);

/// Part of a station's consumption taken from the grid. RSBS draws nothing,
/// HSBS tops up whatever its harvest does not cover, CSBS and MBS draw all.
double grid_draw(const BaseStation& bs);

double grid_power(std::span<const BaseStation> stations);

EnergyLedger ledger_update(const EnergyLedger& ledger, double consumed);

/// Throws TransitionError for a mode the tier does not support. Leaving
/// Active sheds every user.
BaseStation mode_transition(BaseStation bs, BsMode target);

} // namespace hcn
