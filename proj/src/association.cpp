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

#include "hcn/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcn {

namespace {

int tier_rank(BsKind kind)
{
    switch (kind) {
    case BsKind::Rsbs: return 0;
    case BsKind::Hsbs: return 1;
    case BsKind::Csbs: return 2;
    case BsKind::Mbs: return 3;
    }
    return 3;
}

int find_macro(const std::vector<BaseStation>& stations)
{
    for (const auto& bs : stations)
        if (bs.kind == BsKind::Mbs)
            return bs.id;
    return kUnserved;
}

std::vector<double> coverage_of(const std::vector<BaseStation>& stations, double alpha)
{
    std::vector<double> r(stations.size());
    for (std::size_t b = 0; b < stations.size(); ++b)
        r[b] = stations[b].kind == BsKind::Mbs ? std::numeric_limits<double>::infinity()
                                               : coverage_radius(stations[b], alpha);
    return r;
}

/// Best small cell for one user ignoring capacity, or kUnserved if none covers it.
int best_small_cell(const std::vector<BaseStation>& stations, const Geometry& geo, const std::vector<double>& coverage,
                    std::size_t u, AssociationRule rule, const std::vector<int>* loads, int subcarriers_per_user)
{
    const auto& ids = geo.reach[u];
    const auto& dist = geo.reach_distance[u];
    int best = kUnserved;
    int best_rank = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto b = static_cast<std::size_t>(ids[i]);
        const auto& bs = stations[b];
        if (!bs.active() || dist[i] > coverage[b])
            continue;
        if (loads && (*loads)[b] >= bs.capacity(subcarriers_per_user))
            continue;
        if (rule == AssociationRule::Nearest)
            return ids[i];
        // Reach is sorted nearest first, so the first hit per tier is that tier's nearest.
        const int rank = tier_rank(bs.kind);
        if (rank < best_rank) {
            best = ids[i];
            best_rank = rank;
            if (rank == 0)
                break;
        }
    }
    return best;
}

/// Greedy assignment in user-id order, honouring capacity. Writes servers and loads only.
void assign(const std::vector<BaseStation>& stations, const Geometry& geo, const std::vector<double>& coverage,
            const AlgoParams& params, AssociationRule rule, std::vector<int>& servers, std::vector<int>& loads)
{
    const int macro = find_macro(stations);
    const auto n_users = geo.reach.size();

    servers.assign(n_users, kUnserved);
    loads.assign(stations.size(), 0);

    for (std::size_t u = 0; u < n_users; ++u) {
        int best = best_small_cell(stations, geo, coverage, u, rule, &loads, params.subcarriers_per_user);
        if (best == kUnserved && macro != kUnserved && stations[static_cast<std::size_t>(macro)].active() &&
            loads[static_cast<std::size_t>(macro)] < stations[static_cast<std::size_t>(macro)].capacity(params.subcarriers_per_user))
            best = macro;
        servers[u] = best;
        if (best != kUnserved)
            ++loads[static_cast<std::size_t>(best)];
    }
}

void apply_loads(NetworkState& state, const AlgoParams& params, const std::vector<int>& loads)
{
    for (std::size_t b = 0; b < state.stations.size(); ++b) {
        auto& bs = state.stations[b];
        bs.users = loads[b];
        bs.used_bandwidth = loads[b] * params.subcarriers_per_user * bs.model.subcarrier_bandwidth();
    }
}

void apply_assignment(NetworkState& state, const AlgoParams& params, const std::vector<int>& servers,
                      const std::vector<int>& loads)
{
    const auto& geo = *state.geometry;
    apply_loads(state, params, loads);
    for (std::size_t u = 0; u < state.users.size(); ++u) {
        auto& ut = state.users[u];
        ut.server = servers[u];
        if (ut.server == kUnserved) {
            ut.bandwidth = 0.0;
            ut.cls = UserClass::Smu;
            continue;
        }
        const auto& server = state.stations[static_cast<std::size_t>(ut.server)];
        ut.bandwidth = params.subcarriers_per_user * server.model.subcarrier_bandwidth();
        if (server.kind != BsKind::Mbs) {
            ut.cls = UserClass::Ssu;
            continue;
        }
        bool inside_small_cell = false;
        for (int b : geo.reach[u])
            if (geo.distance(static_cast<Eigen::Index>(u), b) <= state.stations[static_cast<std::size_t>(b)].nominal_radius)
                inside_small_cell = true;
        ut.cls = inside_small_cell ? UserClass::Smu : UserClass::Mmu;
    }
}

double raised(const BaseStation& bs, double step)
{
    return std::min(bs.p_tx * (1.0 + step), bs.model.p_tx_max);
}

double lowered(const BaseStation& bs, double step)
{
    return std::max(bs.p_tx * (1.0 - step), bs.model.p_tx_min);
}

/// Working copy driven by the power-control loop. Loads are kept in sync
/// lazily: a change to a station's mode or power only re-evaluates the users
/// that station can reach, and falls back to a full greedy pass whenever a
/// capacity limit could bind (the only case where user order matters).
class Controller {
public:
    Controller(NetworkState state, const AlgoParams& params)
        : state_(std::move(state)), params_(params)
    {
        const auto& st = state_.stations;
        near_csbs_.resize(st.size());
        near_hsbs_.resize(st.size());
        for (const auto& r : st) {
            if (r.kind != BsKind::Rsbs)
                continue;
            for (const auto& other : st) {
                if (!footprints_overlap(r, other))
                    continue;
                if (other.kind == BsKind::Csbs)
                    near_csbs_[static_cast<std::size_t>(r.id)].push_back(other.id);
                else if (other.kind == BsKind::Hsbs)
                    near_hsbs_[static_cast<std::size_t>(r.id)].push_back(other.id);
            }
        }
        coverage_ = coverage_of(st, state_.geometry->path_loss_exponent);
        station_dirty_.assign(st.size(), 0);
        user_mark_.assign(state_.users.size(), 0);
        macro_ = find_macro(st);
    }

    NetworkState& state() { return state_; }

    /// Brings station loads up to date. User records are only written by finalize().
    void refresh()
    {
        if (full_dirty_ || !incremental_ok_) {
            if (full_dirty_ || !dirty_.empty())
                full_refresh();
            return;
        }
        if (dirty_.empty())
            return;

        const auto& geo = *state_.geometry;
        touched_.clear();
        for (int b : dirty_) {
            station_dirty_[static_cast<std::size_t>(b)] = 0;
            for (int u : geo.reachable_users[static_cast<std::size_t>(b)])
                if (!user_mark_[static_cast<std::size_t>(u)]) {
                    user_mark_[static_cast<std::size_t>(u)] = 1;
                    touched_.push_back(u);
                }
        }
        dirty_.clear();

        for (int u : touched_) {
            const auto uu = static_cast<std::size_t>(u);
            user_mark_[uu] = 0;
            int best = best_small_cell(state_.stations, geo, coverage_, uu, AssociationRule::TierPriority, nullptr,
                                       params_.subcarriers_per_user);
            if (best == kUnserved)
                best = macro_;
            const int old = servers_[uu];
            if (best == old)
                continue;
            if (old != kUnserved)
                --loads_[static_cast<std::size_t>(old)];
            if (best != kUnserved)
                ++loads_[static_cast<std::size_t>(best)];
            servers_[uu] = best;
        }

        if (!within_capacity()) {
            full_refresh();
            return;
        }
        apply_loads(state_, params_, loads_);
    }

    NetworkState finalize()
    {
        refresh();
        apply_assignment(state_, params_, servers_, loads_);
        return std::move(state_);
    }

    BaseStation& bs(int id) { return state_.stations[static_cast<std::size_t>(id)]; }

    double delta(int id)
    {
        refresh();
        const auto& b = bs(id);
        return b.harvested - ledger_consumption(b, params_);
    }

    bool set_power(int id, double p)
    {
        auto& b = bs(id);
        if (p == b.p_tx)
            return false;
        b.p_tx = p;
        coverage_[static_cast<std::size_t>(id)] = coverage_radius(b, state_.geometry->path_loss_exponent);
        mark(id);
        return true;
    }

    bool set_mode(int id, BsMode mode)
    {
        auto& b = bs(id);
        if (b.mode == mode)
            return false;
        b = mode_transition(b, mode);
        mark(id);
        return true;
    }

    /// Users a CSBS would attract if it were Active, everything else fixed.
    /// Counts reachable users it covers and outranks their current server;
    /// capacity knock-on effects at other stations are ignored.
    int prospective_users(int id)
    {
        refresh();
        const auto& c = bs(id);
        if (c.active())
            return c.users;
        const auto& geo = *state_.geometry;
        const double radius = coverage_[static_cast<std::size_t>(id)];
        int count = 0;
        for (int u : geo.reachable_users[static_cast<std::size_t>(id)]) {
            if (geo.distance(u, id) > radius)
                continue;
            const int current = servers_[static_cast<std::size_t>(u)];
            if (current == kUnserved || outranks(id, current, u))
                ++count;
        }
        return std::min(count, c.capacity(params_.subcarriers_per_user));
    }

    /// Sleep below U_min prospective users, Active otherwise.
    bool gate_csbs(int id)
    {
        const bool wanted = prospective_users(id) >= params_.u_min;
        return set_mode(id, wanted ? BsMode::Active : BsMode::Sleep);
    }

    bool activate_if_wanted(int id)
    {
        if (bs(id).active() || prospective_users(id) < params_.u_min)
            return false;
        return set_mode(id, BsMode::Active);
    }

    const std::vector<int>& near_csbs(int rsbs) const { return near_csbs_[static_cast<std::size_t>(rsbs)]; }
    const std::vector<int>& near_hsbs(int rsbs) const { return near_hsbs_[static_cast<std::size_t>(rsbs)]; }

    std::vector<int> ids_of(BsKind kind) const
    {
        std::vector<int> out;
        for (const auto& b : state_.stations)
            if (b.kind == kind)
                out.push_back(b.id);
        return out;
    }

private:
    bool outranks(int candidate, int current, int user) const
    {
        const auto& a = state_.stations[static_cast<std::size_t>(candidate)];
        const auto& b = state_.stations[static_cast<std::size_t>(current)];
        const int ra = tier_rank(a.kind);
        const int rb = tier_rank(b.kind);
        if (ra != rb)
            return ra < rb;
        const auto& d = state_.geometry->distance;
        const double da = d(user, candidate);
        const double db = d(user, current);
        return da < db || (da == db && candidate < current);
    }

    void mark(int id)
    {
        if (station_dirty_[static_cast<std::size_t>(id)])
            return;
        station_dirty_[static_cast<std::size_t>(id)] = 1;
        dirty_.push_back(id);
    }

    bool within_capacity() const
    {
        for (std::size_t b = 0; b < loads_.size(); ++b)
            if (loads_[b] >= state_.stations[b].capacity(params_.subcarriers_per_user))
                return false;
        return true;
    }

    void full_refresh()
    {
        assign(state_.stations, *state_.geometry, coverage_, params_, AssociationRule::TierPriority, servers_, loads_);
        apply_loads(state_, params_, loads_);
        for (int b : dirty_)
            station_dirty_[static_cast<std::size_t>(b)] = 0;
        dirty_.clear();
        full_dirty_ = false;
        incremental_ok_ = within_capacity();
    }

    NetworkState state_;
    AlgoParams params_;
    std::vector<int> servers_;
    std::vector<int> loads_;
    std::vector<double> coverage_;
    std::vector<int> dirty_;
    std::vector<char> station_dirty_;
    std::vector<char> user_mark_;
    std::vector<int> touched_;
    int macro_ = kUnserved;
    bool full_dirty_ = true;
    bool incremental_ok_ = false;
    std::vector<std::vector<int>> near_csbs_;
    std::vector<std::vector<int>> near_hsbs_;
};

/// One pass of the per-RSBS power step. Returns whether anything changed.
bool step_rsbs(Controller& ctl, int r, const AlgoParams& params)
{
    if (!ctl.bs(r).active())
        return false;
    const double delta = ctl.delta(r);
    if (delta >= 0.0 && delta <= params.margin)
        return false;

    bool changed = false;
    if (delta > params.margin) {
        changed |= ctl.set_power(r, raised(ctl.bs(r), params.step));
        for (int h : ctl.near_hsbs(r))
            changed |= ctl.set_power(h, raised(ctl.bs(h), params.step));
        for (int c : ctl.near_csbs(r)) {
            changed |= ctl.set_power(c, lowered(ctl.bs(c), params.step));
            changed |= ctl.gate_csbs(c);
        }
        return changed;
    }

    // Deficit: shrink the RSBS and hand load to HSBS, or to CSBS once HSBS saturate.
    const double next = ctl.bs(r).p_tx * (1.0 - params.step);
    if (next < ctl.bs(r).model.p_tx_min) {
        changed |= ctl.set_power(r, ctl.bs(r).model.p_tx_min);
        changed |= ctl.set_mode(r, BsMode::Off);
    } else {
        changed |= ctl.set_power(r, next);
    }

    bool hsbs_has_room = false;
    for (int h : ctl.near_hsbs(r))
        if (ctl.bs(h).p_tx < ctl.bs(h).model.p_tx_max)
            hsbs_has_room = true;

    if (hsbs_has_room) {
        for (int h : ctl.near_hsbs(r))
            changed |= ctl.set_power(h, raised(ctl.bs(h), params.step));
        for (int c : ctl.near_csbs(r))
            changed |= ctl.set_power(c, lowered(ctl.bs(c), params.step));
    } else {
        for (int c : ctl.near_csbs(r)) {
            changed |= ctl.set_power(c, raised(ctl.bs(c), params.step));
            changed |= ctl.activate_if_wanted(c);
        }
    }
    return changed;
}

/// Restores energy causality for every RSBS, then applies the U_min / idle rules.
void settle(Controller& ctl, const AlgoParams& params)
{
    const auto rsbs = ctl.ids_of(BsKind::Rsbs);
    const auto csbs = ctl.ids_of(BsKind::Csbs);

    for (bool changed = true; changed;) {
        changed = false;
        for (int r : rsbs) {
            if (!ctl.bs(r).active() || ctl.delta(r) >= 0.0)
                continue;
            const double next = ctl.bs(r).p_tx * (1.0 - params.step);
            if (next < ctl.bs(r).model.p_tx_min) {
                ctl.set_power(r, ctl.bs(r).model.p_tx_min);
                ctl.set_mode(r, BsMode::Off);
            } else {
                ctl.set_power(r, next);
            }
            changed = true;
        }
        if (changed)
            continue;
        // Sleeping a CSBS can only push users elsewhere, so this settles monotonically.
        for (int c : csbs) {
            ctl.refresh();
            if (ctl.bs(c).active() && ctl.bs(c).users < params.u_min) {
                ctl.set_mode(c, BsMode::Sleep);
                changed = true;
                break;
            }
        }
    }

    ctl.refresh();
    for (int r : rsbs)
        if (ctl.bs(r).active() && ctl.bs(r).users == 0)
            ctl.set_mode(r, BsMode::Off);
}

void offload_to_macro(Controller& ctl, const AlgoParams& params)
{
    const int macro = find_macro(ctl.state().stations);
    if (macro == kUnserved)
        return;
    const auto csbs = ctl.ids_of(BsKind::Csbs);
    while (true) {
        ctl.refresh();
        if (ctl.bs(macro).users > params.n_th)
            break;
        int pick = kUnserved;
        for (int c : csbs)
            if (ctl.bs(c).active() && (pick == kUnserved || ctl.bs(c).users < ctl.bs(pick).users))
                pick = c;
        if (pick == kUnserved)
            break;
        ctl.set_mode(pick, BsMode::Sleep);
    }
}

void reset_to_nominal(NetworkState& state)
{
    for (auto& bs : state.stations) {
        bs.mode = BsMode::Active;
        bs.p_tx = bs.model.p_tx_nominal;
        bs.users = 0;
        bs.used_bandwidth = 0.0;
    }
}

} // namespace

std::string_view to_string(SchemeKind scheme)
{
    switch (scheme) {
    case SchemeKind::NearestBs: return "nearest_bs";
    case SchemeKind::Joint: return "joint";
    case SchemeKind::ProposedJoint: return "proposed_joint";
    }
    return "?";
}

std::optional<SchemeKind> parse_scheme(std::string_view text)
{
    for (auto s : {SchemeKind::NearestBs, SchemeKind::Joint, SchemeKind::ProposedJoint})
        if (to_string(s) == text)
            return s;
    return std::nullopt;
}

double coverage_radius(double p_tx, double nominal_radius, double nominal_p_tx, double path_loss_exponent)
{
    if (!(p_tx > 0.0 && nominal_radius > 0.0 && nominal_p_tx > 0.0 && path_loss_exponent > 0.0))
        throw std::invalid_argument("coverage_radius arguments must be positive");
    return nominal_radius * std::pow(p_tx / nominal_p_tx, 1.0 / path_loss_exponent);
}

double coverage_radius(const BaseStation& bs, double path_loss_exponent)
{
    return coverage_radius(bs.p_tx, bs.nominal_radius, bs.model.p_tx_nominal, path_loss_exponent);
}

bool footprints_overlap(const BaseStation& a, const BaseStation& b)
{
    return a.id != b.id && (a.position - b.position).norm() < a.nominal_radius + b.nominal_radius;
}

int associate_user(const NetworkState& state, const Position& user, std::span<const int> loads,
                   const AlgoParams& params, AssociationRule rule)
{
    const double alpha = state.geometry ? state.geometry->path_loss_exponent : 3.5;
    int best = kUnserved;
    double best_dist = 0.0;
    int best_rank = 0;
    int macro = kUnserved;
    for (const auto& bs : state.stations) {
        if (bs.kind == BsKind::Mbs) {
            macro = bs.id;
            continue;
        }
        if (!bs.active() || loads[static_cast<std::size_t>(bs.id)] >= bs.capacity(params.subcarriers_per_user))
            continue;
        const double d = (user - bs.position).norm();
        if (d > coverage_radius(bs, alpha))
            continue;
        const int rank = rule == AssociationRule::TierPriority ? tier_rank(bs.kind) : 0;
        if (best == kUnserved || rank < best_rank || (rank == best_rank && d < best_dist)) {
            best = bs.id;
            best_dist = d;
            best_rank = rank;
        }
    }
    if (best != kUnserved)
        return best;
    if (macro != kUnserved && state.stations[static_cast<std::size_t>(macro)].active() &&
        loads[static_cast<std::size_t>(macro)] < state.stations[static_cast<std::size_t>(macro)].capacity(params.subcarriers_per_user))
        return macro;
    return kUnserved;
}

void associate_all(NetworkState& state, const AlgoParams& params, AssociationRule rule)
{
    std::vector<int> servers;
    std::vector<int> loads;
    assign(state.stations, *state.geometry, coverage_of(state.stations, state.geometry->path_loss_exponent), params,
           rule, servers, loads);
    apply_assignment(state, params, servers, loads);
}

double ledger_consumption(const BaseStation& bs, const AlgoParams& params)
{
    if (!bs.active())
        return bs_power(bs);
    return params.rf_only_ledger ? rf_power(bs, bs.used_bandwidth) : bs_power(bs);
}

EnergyLedger ledger_of(const BaseStation& bs, const AlgoParams& params)
{
    EnergyLedger ledger;
    ledger.harvested = bs.harvested;
    ledger.margin = params.margin;
    return ledger_update(ledger, ledger_consumption(bs, params));
}

AssociationResult run_power_control(const NetworkState& input, const AlgoParams& params)
{
    NetworkState start = input;
    reset_to_nominal(start);
    Controller ctl(std::move(start), params);

    for (int c : ctl.ids_of(BsKind::Csbs))
        ctl.gate_csbs(c);

    const auto rsbs = ctl.ids_of(BsKind::Rsbs);
    AssociationResult result;
    result.converged = false;
    for (int sweep = 0; sweep < params.max_iter; ++sweep) {
        bool changed = false;
        for (int r : rsbs)
            changed |= step_rsbs(ctl, r, params);
        result.iterations = sweep + 1;
        if (!changed) {
            result.converged = true;
            break;
        }
    }
    result.state = ctl.finalize();
    return result;
}

AssociationResult finish_joint(AssociationResult controlled, SchemeKind scheme, const AlgoParams& params)
{
    if (scheme == SchemeKind::NearestBs)
        throw std::invalid_argument("finish_joint handles the joint schemes only");
    Controller ctl(std::move(controlled.state), params);
    if (scheme == SchemeKind::ProposedJoint)
        offload_to_macro(ctl, params);
    settle(ctl, params);
    controlled.state = ctl.finalize();
    return controlled;
}

AssociationResult run_algorithm1(const NetworkState& input, SchemeKind scheme, const AlgoParams& params)
{
    if (scheme == SchemeKind::NearestBs)
        throw std::invalid_argument("run_algorithm1 handles the joint schemes only");
    return finish_joint(run_power_control(input, params), scheme, params);
}

AssociationResult run_nearest_bs(const NetworkState& input, const AlgoParams& params)
{
    AssociationResult result;
    result.state = input;
    reset_to_nominal(result.state);

    for (bool changed = true; changed;) {
        associate_all(result.state, params, AssociationRule::Nearest);
        changed = false;
        for (auto& bs : result.state.stations) {
            if (bs.kind == BsKind::Rsbs && bs.active() && ledger_consumption(bs, params) > bs.harvested) {
                bs = mode_transition(bs, BsMode::Off);
                changed = true;
            }
        }
        ++result.iterations;
    }
    return result;
}

AssociationResult run_scheme(const NetworkState& state, SchemeKind scheme, const AlgoParams& params)
{
    return scheme == SchemeKind::NearestBs ? run_nearest_bs(state, params) : run_algorithm1(state, scheme, params);
}

} // namespace hcn
