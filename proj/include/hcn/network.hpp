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

#include "hcn/energy.hpp"
#include "hcn/topology.hpp"

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace hcn {

struct UserTerminal {
    Position position = Position::Zero();
    int server = kUnserved;
    UserClass cls = UserClass::Mmu;
    double bandwidth = 0.0;
};

/// Per-sample geometry shared by every scheme evaluated on the same draw.
struct Geometry {
    Eigen::Matrix2Xd users;
    Eigen::Matrix2Xd stations;
    Eigen::MatrixXd distance;  ///< users x stations, meters
    Eigen::MatrixXd link_gain; ///< users x stations, h * r^-alpha
    double path_loss_exponent = 3.5;
    /// For each user, small cells within reach at maximum power, nearest first
    /// (ties by id). Anything outside this list can never cover the user.
    std::vector<std::vector<int>> reach;
    std::vector<std::vector<double>> reach_distance; ///< parallel to `reach`
    /// Inverse of `reach`: users each station could ever cover, by user id.
    std::vector<std::vector<int>> reachable_users;
};

/// Builds distances, gains and reach lists. `fading` must be users x stations;
/// pass a matrix of ones for deterministic links.
std::shared_ptr<const Geometry> make_geometry(const std::vector<Position>& users,
                                              const std::vector<BaseStation>& stations,
                                              const Eigen::MatrixXd& fading, double path_loss_exponent);

/// Station runtime plus users for one Monte Carlo sample. Schemes take a
/// state by const reference and return a new one; geometry is shared.
struct NetworkState {
    std::vector<BaseStation> stations;
    std::vector<UserTerminal> users;
    std::shared_ptr<const Geometry> geometry;

    /// Radiated power per station, zero unless Active.
    Eigen::VectorXd radiated_power() const;
};

/// Fresh state with every station Active at nominal power and no users attached.
std::vector<BaseStation> make_stations(const NetworkLayout& layout, const PowerModel& macro,
                                       const PowerModel& small_cell);

NetworkState make_state(std::vector<BaseStation> stations, const std::vector<Position>& users,
                        const Eigen::MatrixXd& fading, double path_loss_exponent);

/// SIR of `user` when served by `server`. Throws std::logic_error if the server is not Active.
double sir(const NetworkState& state, int user, int server);

/// Sum of B log2(1 + SIR) over served users.
double sum_rate(const NetworkState& state);

} // namespace hcn
