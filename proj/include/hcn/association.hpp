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

// User association and small-cell power/mode control.
//
// Users attach by tier priority (RSBS, then HSBS, then CSBS, then the MBS),
// nearest station first within a tier. Each RSBS then steers its transmit
// power so that harvest minus consumption lands in [0, C], pulling HSBS
// and nearby CSBS power along with it and putting CSBSs to sleep when they
// would serve fewer than U_min users. The proposed variant finishes by
// letting the MBS absorb the least-loaded CSBSs while it has spare room.

#include "hcn/network.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace hcn {

enum class SchemeKind { NearestBs, Joint, ProposedJoint };

std::string_view to_string(SchemeKind scheme);
std::optional<SchemeKind> parse_scheme(std::string_view text);

/// How a user ranks candidate small cells.
enum class AssociationRule {
    TierPriority, ///< RSBS > HSBS > CSBS, nearest within a tier
    Nearest       ///< nearest small cell regardless of tier
};

struct AlgoParams {
    int u_min = 2;
    int n_th = 200;
    double margin = 1.0;          ///< C, J
    double step = 0.1;            ///< multiplicative power step
    int max_iter = 200;           ///< sweeps over the RSBS set
    int subcarriers_per_user = 1;
    bool rf_only_ledger = false;  ///< count only RF power against the harvest
};

struct AssociationResult {
    NetworkState state;
    bool converged = true;
    int iterations = 0;
};

/// nominal_radius * (p_tx / nominal_p_tx)^(1/alpha): the radius at which the
/// received power equals the nominal cell-edge power.
double coverage_radius(double p_tx, double nominal_radius, double nominal_p_tx, double path_loss_exponent);

double coverage_radius(const BaseStation& bs, double path_loss_exponent);

/// Serving station for a user at `user`, given current per-station loads
/// (user counts). Returns kUnserved when neither a small cell nor the MBS
/// has room. Ties go to the lower station id.
int associate_user(const NetworkState& state, const Position& user, std::span<const int> loads,
                   const AlgoParams& params, AssociationRule rule = AssociationRule::TierPriority);

/// Attaches every user in id order, filling server, class, bandwidth and the
/// per-station load ledgers. Station modes and powers are left untouched.
void associate_all(NetworkState& state, const AlgoParams& params,
                   AssociationRule rule = AssociationRule::TierPriority);

/// Energy charged against an EH station's harvest under the chosen ledger reading.
double ledger_consumption(const BaseStation& bs, const AlgoParams& params);

EnergyLedger ledger_of(const BaseStation& bs, const AlgoParams& params);

/// Harvest-driven power and mode loop shared by both joint schemes. Every
/// station starts Active at nominal power; CSBSs are first gated on U_min.
AssociationResult run_power_control(const NetworkState& state, const AlgoParams& params);

/// Scheme-specific tail: macro offloading for ProposedJoint, then energy
/// causality repair, U_min / idle shedding and the final association pass.
AssociationResult finish_joint(AssociationResult controlled, SchemeKind scheme, const AlgoParams& params);

/// Joint or ProposedJoint scheme end to end.
AssociationResult run_algorithm1(const NetworkState& state, SchemeKind scheme, const AlgoParams& params);

/// Baseline: every station Active at nominal power, users to the nearest
/// covering small cell, else the MBS. An RSBS whose harvest cannot carry its
/// load is switched off and its users re-attached.
AssociationResult run_nearest_bs(const NetworkState& state, const AlgoParams& params);

AssociationResult run_scheme(const NetworkState& state, SchemeKind scheme, const AlgoParams& params);

/// Stations whose nominal footprints overlap (centre distance below the sum of radii).
bool footprints_overlap(const BaseStation& a, const BaseStation& b);

} // namespace hcn
