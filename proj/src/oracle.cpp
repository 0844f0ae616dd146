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

#include "hcn/oracle.hpp"

#include "hcn/association.hpp"
#include "hcn/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

namespace hcn::oracle {

namespace {

constexpr double kCap = 1e9;

double dist(const Station& s, const Point2& u)
{
    return std::hypot(u[0] - s.x, u[1] - s.y);
}

// Covered iff the received power reaches the nominal cell-edge power.
bool covers(const Station& s, const Point2& u, double alpha)
{
    if (s.kind == BsKind::Mbs)
        return true;
    return s.p_tx * std::pow(dist(s, u), -alpha) >= s.p_nominal * std::pow(s.r_nominal, -alpha);
}

using Key = std::tuple<int, double, int>;

Key key_of(const Instance& inst, std::size_t u, int b, bool tier_priority)
{
    if (b < 0)
        return {5, 0.0, 0};
    const auto& s = inst.stations[static_cast<std::size_t>(b)];
    int rank = 0;
    if (s.kind == BsKind::Mbs)
        rank = 4;
    else if (tier_priority)
        rank = s.kind == BsKind::Rsbs ? 1 : s.kind == BsKind::Hsbs ? 2 : 3;
    return {rank, dist(s, inst.users[u]), b};
}

struct Search {
    const Instance& inst;
    bool tier_priority;
    std::vector<std::vector<int>> options; // feasible stations (and -1) per user
    std::vector<int> room;
    std::vector<int> current;
    std::vector<Key> current_keys;
    std::vector<Key> best_keys;
    std::vector<int> best;
    bool found = false;

    void run(std::size_t u)
    {
        if (u == inst.users.size()) {
            if (!found || current_keys < best_keys) {
                best_keys = current_keys;
                best = current;
                found = true;
            }
            return;
        }
        for (int b : options[u]) {
            if (b >= 0 && room[static_cast<std::size_t>(b)] == 0)
                continue;
            if (b >= 0)
                --room[static_cast<std::size_t>(b)];
            current[u] = b;
            current_keys[u] = key_of(inst, u, b, tier_priority);
            run(u + 1);
            if (b >= 0)
                ++room[static_cast<std::size_t>(b)];
        }
    }
};

// ---- conversion to the library representation ----------------------------

NetworkState to_state(const Instance& inst)
{
    std::vector<BaseStation> stations;
    for (std::size_t i = 0; i < inst.stations.size(); ++i) {
        const auto& s = inst.stations[i];
        BaseStation bs;
        bs.id = static_cast<int>(i);
        bs.kind = s.kind;
        bs.position = Position{s.x, s.y};
        bs.nominal_radius = s.r_nominal;
        bs.mode = s.active ? BsMode::Active : (s.kind == BsKind::Csbs ? BsMode::Sleep : BsMode::Off);
        bs.p_tx = s.p_tx;
        bs.model.p_const = s.p_const;
        bs.model.beta = s.beta;
        bs.model.p_tx_nominal = s.p_nominal;
        bs.model.p_tx_min = std::min(1.0, s.p_tx);
        bs.model.p_tx_max = std::max(s.p_nominal, s.p_tx);
        bs.model.n_subcarriers = s.subcarriers;
        bs.model.total_bandwidth = s.subcarriers * 1e4;
        bs.harvested = s.harvested;
        stations.push_back(bs);
    }
    std::vector<Position> users;
    for (const auto& u : inst.users)
        users.emplace_back(u[0], u[1]);
    const auto ones = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(users.size()),
                                            static_cast<Eigen::Index>(stations.size()));
    return make_state(std::move(stations), users, ones, inst.alpha);
}

Instance random_instance(std::mt19937_64& rng, int max_sbs, int max_users)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto disc = [&](double radius) {
        const double r = radius * std::sqrt(unit(rng));
        const double t = 6.283185307179586 * unit(rng);
        return Point2{r * std::cos(t), r * std::sin(t)};
    };

    Instance inst;
    Station mbs;
    mbs.kind = BsKind::Mbs;
    mbs.p_tx = mbs.p_nominal = 40.0;
    mbs.r_nominal = 1730.0;
    mbs.subcarriers = 1 + static_cast<int>(rng() % 6);
    mbs.capacity = mbs.subcarriers;
    mbs.p_const = 354.44;
    mbs.beta = 21.45;
    mbs.active = true;
    inst.stations.push_back(mbs);

    const int n_sbs = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_sbs));
    for (int k = 0; k < n_sbs; ++k) {
        Station s;
        const auto pick = rng() % 3;
        s.kind = pick == 0 ? BsKind::Csbs : pick == 1 ? BsKind::Rsbs : BsKind::Hsbs;
        const auto p = disc(500.0);
        s.x = p[0];
        s.y = p[1];
        s.p_nominal = 30.0;
        s.p_tx = 1.0 + 29.0 * unit(rng);
        s.r_nominal = 150.0 + 250.0 * unit(rng);
        s.subcarriers = 1 + static_cast<int>(rng() % 3);
        s.capacity = s.subcarriers;
        s.p_const = 38.0;
        s.beta = 5.5;
        s.harvested = 30.0 + 100.0 * unit(rng);
        s.active = s.kind == BsKind::Hsbs || unit(rng) < 0.75;
        inst.stations.push_back(s);
    }

    const int n_users = static_cast<int>(rng() % static_cast<unsigned>(max_users + 1));
    for (int k = 0; k < n_users; ++k)
        inst.users.push_back(disc(650.0));
    return inst;
}

} // namespace

std::vector<int> best_assignment(const Instance& inst, bool tier_priority)
{
    Search s{inst, tier_priority, {}, {}, {}, {}, {}, {}};
    s.options.resize(inst.users.size());
    for (std::size_t u = 0; u < inst.users.size(); ++u) {
        for (std::size_t b = 0; b < inst.stations.size(); ++b) {
            const auto& st = inst.stations[b];
            if (st.active && covers(st, inst.users[u], inst.alpha))
                s.options[u].push_back(static_cast<int>(b));
        }
        s.options[u].push_back(-1);
    }
    for (const auto& st : inst.stations)
        s.room.push_back(st.capacity);
    s.current.assign(inst.users.size(), -1);
    s.current_keys.resize(inst.users.size());
    s.run(0);
    return s.best;
}

std::vector<int> nearest_bs_servers(Instance inst)
{
    for (auto& s : inst.stations) {
        s.active = true;
        s.p_tx = s.p_nominal;
        s.capacity = s.subcarriers;
    }
    for (;;) {
        const auto servers = best_assignment(inst, false);
        bool changed = false;
        for (std::size_t b = 0; b < inst.stations.size(); ++b) {
            auto& s = inst.stations[b];
            if (s.kind != BsKind::Rsbs || !s.active)
                continue;
            const auto load = std::count(servers.begin(), servers.end(), static_cast<int>(b));
            const double consumed = s.p_const + s.beta * (static_cast<double>(load) / s.subcarriers) * s.p_tx;
            if (consumed > s.harvested) {
                s.active = false;
                changed = true;
            }
        }
        if (!changed)
            return servers;
    }
}

double sir(const std::vector<Station>& stations, const Point2& user, int server, double alpha)
{
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t b = 0; b < stations.size(); ++b) {
        const auto& s = stations[b];
        if (!s.active)
            continue;
        const double rx = s.p_tx / std::pow(dist(s, user), alpha);
        if (static_cast<int>(b) == server)
            signal = rx;
        else
            interference += rx;
    }
    if (interference == 0.0)
        return kCap;
    return std::min(signal / interference, kCap);
}

SuiteReport run_suite(int instances, int sir_cases, std::uint64_t seed)
{
    SuiteReport report;
    std::mt19937_64 rng(seed);
    AlgoParams params;

    for (int i = 0; i < instances; ++i) {
        const Instance inst = random_instance(rng, 3, 6);
        const NetworkState base = to_state(inst);

        // Whole-instance greedy, both rules.
        for (bool tier : {true, false}) {
            NetworkState st = base;
            associate_all(st, params, tier ? AssociationRule::TierPriority : AssociationRule::Nearest);
            const auto expected = best_assignment(inst, tier);
            ++report.association_instances;
            for (std::size_t u = 0; u < inst.users.size(); ++u)
                if (st.users[u].server != expected[u]) {
                    ++report.association_mismatches;
                    break;
                }
        }

        // Single user against random existing loads.
        for (std::size_t u = 0; u < inst.users.size(); ++u) {
            Instance one = inst;
            one.users = {inst.users[u]};
            std::vector<int> loads;
            for (auto& s : one.stations) {
                const int load = static_cast<int>(rng() % static_cast<unsigned>(s.subcarriers + 1));
                loads.push_back(load);
                s.capacity = s.subcarriers - load;
            }
            const bool tier = rng() % 2 == 0;
            const int got = associate_user(base, Position{inst.users[u][0], inst.users[u][1]}, loads, params,
                                           tier ? AssociationRule::TierPriority : AssociationRule::Nearest);
            ++report.single_user_checks;
            if (got != best_assignment(one, tier).front())
                ++report.single_user_mismatches;
        }

        const auto nearest = run_nearest_bs(base, params);
        const auto expected = nearest_bs_servers(inst);
        ++report.nearest_instances;
        for (std::size_t u = 0; u < inst.users.size(); ++u)
            if (nearest.state.users[u].server != expected[u]) {
                ++report.nearest_mismatches;
                break;
            }
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int c = 0; c < sir_cases; ++c) {
        Instance inst = random_instance(rng, 2, 1);
        while (inst.stations.size() < 3) {
            inst = random_instance(rng, 2, 1);
        }
        inst.users = {{1000.0 * (unit(rng) - 0.5), 1000.0 * (unit(rng) - 0.5)}};
        for (auto& s : inst.stations)
            s.active = true;
        const int server = static_cast<int>(rng() % 3);
        const NetworkState st = to_state(inst);
        const double got = hcn::sir(st, 0, server);
        const double want = sir(inst.stations, inst.users[0], server, inst.alpha);
        const double rel = std::abs(got - want) / std::abs(want);
        report.sir_max_rel_error = std::max(report.sir_max_rel_error, rel);
        ++report.sir_cases;
    }
    return report;
}

} // namespace hcn::oracle
