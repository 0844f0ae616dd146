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

#include "hcn/network.hpp"

#include "hcn/association.hpp"
#include "hcn/channel.hpp"

#include <algorithm>

namespace hcn {

std::shared_ptr<const Geometry> make_geometry(const std::vector<Position>& users,
                                              const std::vector<BaseStation>& stations,
                                              const Eigen::MatrixXd& fading, double path_loss_exponent)
{
    const auto n_users = static_cast<Eigen::Index>(users.size());
    const auto n_bs = static_cast<Eigen::Index>(stations.size());
    if (fading.rows() != n_users || fading.cols() != n_bs)
        throw std::invalid_argument("fading matrix must be users x stations");

    auto g = std::make_shared<Geometry>();
    g->path_loss_exponent = path_loss_exponent;
    g->users.resize(2, n_users);
    for (Eigen::Index u = 0; u < n_users; ++u)
        g->users.col(u) = users[static_cast<std::size_t>(u)];
    g->stations.resize(2, n_bs);
    for (Eigen::Index b = 0; b < n_bs; ++b)
        g->stations.col(b) = stations[static_cast<std::size_t>(b)].position;

    g->distance = distance_matrix(g->users, g->stations);
    g->link_gain = link_gain_matrix(g->distance, fading, path_loss_exponent);

    std::vector<double> reach_radius(stations.size());
    for (std::size_t b = 0; b < stations.size(); ++b) {
        const auto& bs = stations[b];
        reach_radius[b] = coverage_radius(bs.model.p_tx_max, bs.nominal_radius, bs.model.p_tx_nominal,
                                          path_loss_exponent);
    }

    g->reach.resize(users.size());
    for (Eigen::Index u = 0; u < n_users; ++u) {
        auto& list = g->reach[static_cast<std::size_t>(u)];
        for (Eigen::Index b = 0; b < n_bs; ++b)
            if (stations[static_cast<std::size_t>(b)].kind != BsKind::Mbs &&
                g->distance(u, b) <= reach_radius[static_cast<std::size_t>(b)])
                list.push_back(static_cast<int>(b));
        std::sort(list.begin(), list.end(), [&](int a, int b) {
            const double da = g->distance(u, a);
            const double db = g->distance(u, b);
            return da < db || (da == db && a < b);
        });
    }

    g->reach_distance.resize(users.size());
    for (std::size_t u = 0; u < g->reach.size(); ++u)
        for (int b : g->reach[u])
            g->reach_distance[u].push_back(g->distance(static_cast<Eigen::Index>(u), b));

    g->reachable_users.resize(stations.size());
    for (std::size_t u = 0; u < g->reach.size(); ++u)
        for (int b : g->reach[u])
            g->reachable_users[static_cast<std::size_t>(b)].push_back(static_cast<int>(u));
    return g;
}

Eigen::VectorXd NetworkState::radiated_power() const
{
    Eigen::VectorXd p(static_cast<Eigen::Index>(stations.size()));
    for (std::size_t b = 0; b < stations.size(); ++b)
        p(static_cast<Eigen::Index>(b)) = stations[b].active() ? stations[b].p_tx : 0.0;
    return p;
}

std::vector<BaseStation> make_stations(const NetworkLayout& layout, const PowerModel& macro,
                                       const PowerModel& small_cell)
{
    std::vector<BaseStation> out;
    out.reserve(layout.sites.size());
    for (std::size_t i = 0; i < layout.sites.size(); ++i) {
        const auto& site = layout.sites[i];
        BaseStation bs;
        bs.id = static_cast<int>(i);
        bs.kind = site.kind;
        bs.position = site.position;
        bs.nominal_radius = site.nominal_radius;
        bs.model = site.kind == BsKind::Mbs ? macro : small_cell;
        bs.p_tx = bs.model.p_tx_nominal;
        bs.mode = BsMode::Active;
        out.push_back(bs);
    }
    return out;
}

NetworkState make_state(std::vector<BaseStation> stations, const std::vector<Position>& users,
                        const Eigen::MatrixXd& fading, double path_loss_exponent)
{
    NetworkState state;
    state.geometry = make_geometry(users, stations, fading, path_loss_exponent);
    state.stations = std::move(stations);
    state.users.reserve(users.size());
    for (const auto& p : users)
        state.users.push_back(UserTerminal{p});
    return state;
}

double sir(const NetworkState& state, int user, int server)
{
    if (!state.stations.at(static_cast<std::size_t>(server)).active())
        throw std::logic_error("serving station is not active");
    return hcn::sir(state.geometry->link_gain.row(user), state.radiated_power(), server);
}

double sum_rate(const NetworkState& state)
{
    const Eigen::VectorXd radiated = state.radiated_power();
    double total = 0.0;
    for (std::size_t u = 0; u < state.users.size(); ++u) {
        const auto& ut = state.users[u];
        if (ut.server == kUnserved)
            continue;
        const double s = hcn::sir(state.geometry->link_gain.row(static_cast<Eigen::Index>(u)), radiated, ut.server);
        total += user_rate(ut.bandwidth, s);
    }
    return total;
}

} // namespace hcn
