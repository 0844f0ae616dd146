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

#include "hcn/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hcn {

PowerModel macro_power_defaults()
{
    PowerModel m;
    m.p_const = 354.44;
    m.beta = 21.45;
    m.p_tx_nominal = 40.0;
    m.p_tx_min = 40.0;
    m.p_tx_max = 40.0;
    m.total_bandwidth = 10e6;
    m.n_subcarriers = 1000;
    m.sleep_power = 0.0;
    return m;
}

PowerModel small_cell_power_defaults()
{
    return PowerModel{};
}

void validate(const PowerModel& m)
{
    if (!(m.p_const > 0.0))
        throw std::invalid_argument("p_const must be positive");
    if (!(m.beta > 0.0))
        throw std::invalid_argument("beta must be positive");
    if (!(m.total_bandwidth > 0.0))
        throw std::invalid_argument("bandwidth must be positive");
    if (m.n_subcarriers <= 0)
        throw std::invalid_argument("subcarriers must be positive");
    if (!(m.p_tx_min >= 0.0 && m.p_tx_min <= m.p_tx_nominal && m.p_tx_nominal <= m.p_tx_max))
        throw std::invalid_argument("transmit powers must satisfy 0 <= p_tx_min <= p_tx <= p_tx_max");
    if (!(m.p_tx_nominal > 0.0))
        throw std::invalid_argument("p_tx must be positive");
    if (!(m.sleep_power >= 0.0))
        throw std::invalid_argument("sleep_power must be non-negative");
}

bool mode_allowed(BsKind kind, BsMode mode)
{
    switch (kind) {
    case BsKind::Mbs:
    case BsKind::Hsbs: return mode == BsMode::Active;
    case BsKind::Csbs: return mode != BsMode::Off;
    case BsKind::Rsbs: return mode != BsMode::Sleep;
    }
    return false;
}

double harvest_energy(double rate, double uniform)
{
    if (!(rate >= 0.0 && rate <= 700.0))
        throw std::invalid_argument("energy arrival rate must lie in [0, 700] J/s");
    if (rate == 0.0)
        return 0.0;

    // Sequential search on the CDF; exp(-rate) stays normal up to rate ~708.
    double pmf = std::exp(-rate);
    double cdf = pmf;
    long k = 0;
    while (uniform > cdf) {
        ++k;
        pmf *= rate / static_cast<double>(k);
        const double next = cdf + pmf;
        if (next == cdf) // tail exhausted in double precision
            break;
        cdf = next;
    }
    return static_cast<double>(k);
}

double harvest_energy(double rate, std::mt19937_64& rng)
{
    return harvest_energy(rate, std::uniform_real_distribution<double>(0.0, 1.0)(rng));
}

double rf_power(const BaseStation& bs, double used_bandwidth)
{
    if (used_bandwidth < 0.0 || used_bandwidth > bs.model.total_bandwidth * (1.0 + 1e-12))
        throw AllocationError("used bandwidth of BS " + std::to_string(bs.id) + " exceeds its total bandwidth");
    return bs.model.beta * (used_bandwidth / bs.model.total_bandwidth) * bs.p_tx;
}

double bs_power(const BaseStation& bs, double used_bandwidth)
{
    switch (bs.mode) {
    case BsMode::Off: return 0.0;
    case BsMode::Sleep: return bs.model.sleep_power;
    case BsMode::Active: break;
    }
    return bs.model.p_const + rf_power(bs, used_bandwidth);
}

double grid_draw(const BaseStation& bs)
{
    switch (bs.kind) {
    case BsKind::Rsbs: return 0.0;
    case BsKind::Hsbs: return std::max(0.0, bs_power(bs) - bs.harvested);
    case BsKind::Mbs:
    case BsKind::Csbs: return bs_power(bs);
    }
    return 0.0;
}

double grid_power(std::span<const BaseStation> stations)
{
    double total = 0.0;
    for (const auto& bs : stations)
        total += grid_draw(bs);
    return total;
}

EnergyLedger ledger_update(const EnergyLedger& ledger, double consumed)
{
    if (!(consumed >= 0.0))
        throw std::invalid_argument("consumed energy must be non-negative");
    EnergyLedger next = ledger;
    next.consumed = consumed;
    next.delta = next.harvested - consumed;
    return next;
}

BaseStation mode_transition(BaseStation bs, BsMode target)
{
    if (!mode_allowed(bs.kind, target))
        throw TransitionError(std::string(to_string(bs.kind)) + " cannot enter " + std::string(to_string(target)) +
                              " mode");
    bs.mode = target;
    if (target != BsMode::Active) {
        bs.users = 0;
        bs.used_bandwidth = 0.0;
    }
    return bs;
}

} // namespace hcn
