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
#include "hcn/channel.hpp"
#include "hcn/oracle.hpp"
#include "hcn/simulation.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace hcn;

namespace {

/// Hand-built scenario: MBS at the origin as id 0, unit fading.
struct Scenario {
    std::vector<BaseStation> stations;
    std::vector<Position> users;

    Scenario() { add(BsKind::Mbs, 0, 0); }

    int add(BsKind kind, double x, double y, double harvested = 44.0)
    {
        BaseStation bs;
        bs.id = static_cast<int>(stations.size());
        bs.kind = kind;
        bs.position = Position{x, y};
        bs.nominal_radius = kind == BsKind::Mbs ? 1730.0 : 350.0;
        bs.model = kind == BsKind::Mbs ? macro_power_defaults() : small_cell_power_defaults();
        bs.p_tx = bs.model.p_tx_nominal;
        bs.harvested = bs.harvests() ? harvested : 0.0;
        stations.push_back(bs);
        return bs.id;
    }

    void user(double x, double y) { users.emplace_back(x, y); }

    NetworkState build() const
    {
        const auto ones = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(users.size()),
                                                static_cast<Eigen::Index>(stations.size()));
        return make_state(stations, users, ones, 3.5);
    }
};

int rank_of(BsKind kind)
{
    return kind == BsKind::Rsbs ? 0 : kind == BsKind::Hsbs ? 1 : kind == BsKind::Csbs ? 2 : 3;
}

/// Checks every structural property of a final state.
void check_final_state(const NetworkState& st, const AlgoParams& params, bool priority_rule)
{
    const auto& geo = *st.geometry;
    std::vector<int> load(st.stations.size(), 0);
    std::vector<double> bw(st.stations.size(), 0.0);

    for (const auto& bs : st.stations) {
        CHECK(mode_allowed(bs.kind, bs.mode));
        if (bs.kind != BsKind::Mbs && bs.active()) {
            CHECK(bs.p_tx >= bs.model.p_tx_min);
            CHECK(bs.p_tx <= bs.model.p_tx_max);
        }
        if (bs.kind == BsKind::Rsbs && bs.active())
            CHECK(ledger_consumption(bs, params) <= bs.harvested);
    }

    for (std::size_t u = 0; u < st.users.size(); ++u) {
        const int s = st.users[u].server;
        if (s == kUnserved)
            continue;
        const auto& server = st.stations[static_cast<std::size_t>(s)];
        CHECK(server.active());
        ++load[static_cast<std::size_t>(s)];
        bw[static_cast<std::size_t>(s)] += st.users[u].bandwidth;
        const double d = geo.distance(static_cast<Eigen::Index>(u), s);
        if (server.kind != BsKind::Mbs)
            CHECK(d <= coverage_radius(server, 3.5) * (1 + 1e-12));

        if (!priority_rule)
            continue;
        // no better small cell had room and coverage
        for (const auto& other : st.stations) {
            if (other.kind == BsKind::Mbs || !other.active() || other.id == s)
                continue;
            const double od = geo.distance(static_cast<Eigen::Index>(u), other.id);
            if (od > coverage_radius(other, 3.5))
                continue;
            const bool better = rank_of(other.kind) < rank_of(server.kind) ||
                                (rank_of(other.kind) == rank_of(server.kind) && od < d);
            if (better)
                CHECK(other.users >= other.capacity(params.subcarriers_per_user));
        }
    }
    for (const auto& bs : st.stations) {
        CHECK(bs.users == load[static_cast<std::size_t>(bs.id)]);
        CHECK(bs.used_bandwidth == doctest::Approx(bw[static_cast<std::size_t>(bs.id)]));
        CHECK(bs.used_bandwidth <= bs.model.total_bandwidth);
        if (!bs.active())
            CHECK(bs.users == 0);
    }
}

} // namespace

TEST_CASE("coverage radius")
{
    CHECK(coverage_radius(30.0, 350.0, 30.0, 3.5) == doctest::Approx(350.0));
    const double half = coverage_radius(15.0, 350.0, 30.0, 3.5);
    CHECK(half == doctest::Approx(350.0 * std::pow(0.5, 1.0 / 3.5)).epsilon(1e-14));
    CHECK(half == doctest::Approx(287.12).epsilon(1e-4));
    CHECK(coverage_radius(15.1, 350.0, 30.0, 3.5) > half);
    CHECK_THROWS(coverage_radius(0.0, 350.0, 30.0, 3.5));
    CHECK_THROWS(coverage_radius(10.0, 350.0, 30.0, -1.0));

    // the cell-edge received power is the same at every power level
    const double edge = 30.0 * std::pow(350.0, -3.5);
    CHECK(15.0 * std::pow(half, -3.5) == doctest::Approx(edge).epsilon(1e-12));
}

TEST_CASE("associate_user: tier priority beats distance")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 600, 0);
    sc.add(BsKind::Csbs, 700, 0);
    sc.user(680, 0);
    const auto st = sc.build();
    std::vector<int> loads(st.stations.size(), 0);
    AlgoParams p;
    CHECK(associate_user(st, Position{680, 0}, loads, p) == 1);
    CHECK(associate_user(st, Position{680, 0}, loads, p, AssociationRule::Nearest) == 2);
}

TEST_CASE("associate_user: macro when no small cell covers")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 600, 0);
    const auto st = sc.build();
    std::vector<int> loads(st.stations.size(), 0);
    CHECK(associate_user(st, Position{-900, 0}, loads, AlgoParams{}) == 0);
}

TEST_CASE("associate_user: nearest within a tier, ties to the lower id")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 800, 0);
    sc.add(BsKind::Rsbs, 500, 0);
    const auto st = sc.build();
    std::vector<int> loads(st.stations.size(), 0);
    AlgoParams p;
    CHECK(associate_user(st, Position{600, 0}, loads, p) == 2); // 100 m vs 200 m
    CHECK(associate_user(st, Position{650, 0}, loads, p) == 1); // equidistant
}

TEST_CASE("associate_user: capacity pushes the user down the priority list")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 600, 0);
    sc.add(BsKind::Csbs, 700, 0);
    const auto st = sc.build();
    std::vector<int> loads{0, 500, 0};
    AlgoParams p;
    CHECK(associate_user(st, Position{680, 0}, loads, p) == 2);
    loads = {0, 500, 500};
    CHECK(associate_user(st, Position{680, 0}, loads, p) == 0);
    loads = {1000, 500, 500};
    CHECK(associate_user(st, Position{680, 0}, loads, p) == kUnserved);
}

TEST_CASE("associate_all: six users, three small cells, against exhaustive search")
{
    oracle::Instance inst;
    auto add = [&](BsKind kind, double x, double y, int capacity, double p_tx) {
        oracle::Station s;
        s.kind = kind;
        s.x = x;
        s.y = y;
        s.p_tx = p_tx;
        s.p_nominal = kind == BsKind::Mbs ? 40.0 : 30.0;
        s.r_nominal = kind == BsKind::Mbs ? 1730.0 : 350.0;
        s.capacity = s.subcarriers = capacity;
        s.p_const = 38.0;
        s.beta = 5.5;
        inst.stations.push_back(s);
    };
    add(BsKind::Mbs, 0, 0, 1, 40);
    add(BsKind::Csbs, 400, 0, 2, 30);
    add(BsKind::Rsbs, 550, 100, 1, 20);
    add(BsKind::Hsbs, 300, 250, 1, 30);
    inst.users = {{520, 80}, {450, 20}, {330, 200}, {600, 150}, {-200, -300}, {-500, 200}};

    const auto expected = oracle::best_assignment(inst, true);

    Scenario sc;
    for (std::size_t i = 1; i < inst.stations.size(); ++i) {
        const int id = sc.add(inst.stations[i].kind, inst.stations[i].x, inst.stations[i].y);
        sc.stations[static_cast<std::size_t>(id)].p_tx = inst.stations[i].p_tx;
        sc.stations[static_cast<std::size_t>(id)].model.n_subcarriers = inst.stations[i].capacity;
        sc.stations[static_cast<std::size_t>(id)].model.total_bandwidth = inst.stations[i].capacity * 1e4;
    }
    sc.stations[0].model.n_subcarriers = 1;
    sc.stations[0].model.total_bandwidth = 1e4;
    for (const auto& u : inst.users)
        sc.user(u[0], u[1]);
    auto st = sc.build();
    associate_all(st, AlgoParams{});
    for (std::size_t u = 0; u < inst.users.size(); ++u)
        CHECK(st.users[u].server == expected[u]);
    // the capacity limits actually bind in this instance
    CHECK(std::count(expected.begin(), expected.end(), -1) >= 1);
}

TEST_CASE("oracle suite on 500 random small instances")
{
    const auto r = oracle::run_suite(500, 100, 17);
    CHECK(r.association_mismatches == 0);
    CHECK(r.single_user_mismatches == 0);
    CHECK(r.nearest_mismatches == 0);
    CHECK(r.sir_max_rel_error <= 1e-12);
    CHECK(r.single_user_checks > 500);
}

TEST_CASE("nearest baseline: equidistant user goes to the lower id")
{
    Scenario sc;
    sc.add(BsKind::Csbs, 500, 0);
    sc.add(BsKind::Csbs, 700, 0);
    sc.user(600, 0);
    const auto res = run_nearest_bs(sc.build(), AlgoParams{});
    CHECK(res.state.users[0].server == 1);
}

TEST_CASE("nearest baseline: no users means every station idles at P_c")
{
    Scenario sc;
    sc.add(BsKind::Csbs, 500, 0);
    sc.add(BsKind::Rsbs, -500, 0);
    sc.add(BsKind::Hsbs, 0, 500);
    const auto res = run_nearest_bs(sc.build(), AlgoParams{});
    for (const auto& bs : res.state.stations) {
        CHECK(bs.active());
        CHECK(bs.p_tx == bs.model.p_tx_nominal);
        CHECK(bs_power(bs) == bs.model.p_const);
    }
    // RSBS and (fully harvested) HSBS take nothing from the grid
    CHECK(grid_power(res.state.stations) == doctest::Approx(354.44 + 38.0));
}

TEST_CASE("nearest baseline: an RSBS that cannot pay for its load switches off")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 600, 0, 30.0); // below P_c
    sc.user(620, 0);
    const auto res = run_nearest_bs(sc.build(), AlgoParams{});
    CHECK(res.state.stations[1].mode == BsMode::Off);
    CHECK(res.state.users[0].server == 0);
    CHECK(res.state.users[0].cls == UserClass::Smu);
}

TEST_CASE("algorithm: an RSBS without harvest ends Off and its users move")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 600, 0, 0.0);
    sc.add(BsKind::Csbs, 750, 0);
    for (double x : {560.0, 600.0, 640.0, 700.0, 760.0})
        sc.user(x, 10.0);
    sc.user(-600.0, -300.0); // far from both
    const AlgoParams p;
    const auto res = run_algorithm1(sc.build(), SchemeKind::Joint, p);
    CHECK(res.converged);
    CHECK(res.state.stations[1].mode == BsMode::Off);
    for (std::size_t u = 0; u < 5; ++u) {
        const auto& ut = res.state.users[u];
        if (ut.server == 0)
            CHECK(ut.cls == UserClass::Smu);
        else
            CHECK(ut.cls == UserClass::Ssu);
    }
    CHECK(res.state.users[5].cls == UserClass::Mmu);
    check_final_state(res.state, p, true);
}

TEST_CASE("algorithm: surplus harvest keeps the RSBS at P_max and sleeps a lightly loaded neighbour")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 600, 0, 200.0);
    sc.add(BsKind::Csbs, 900, 0);
    sc.user(620, 0);
    sc.user(1000, 0); // the CSBS's only prospective user
    const AlgoParams p;
    const auto res = run_algorithm1(sc.build(), SchemeKind::Joint, p);
    CHECK(res.state.stations[1].active());
    CHECK(res.state.stations[1].p_tx == doctest::Approx(30.0));
    CHECK(res.state.stations[2].mode == BsMode::Sleep);
    CHECK(res.state.users[1].server == 0);
    check_final_state(res.state, p, true);
}

TEST_CASE("algorithm: a deficit shrinks the RSBS until its harvest covers it")
{
    Scenario sc;
    sc.add(BsKind::Rsbs, 600, 0, 40.0);
    sc.add(BsKind::Hsbs, 900, 0, 44.0);
    // Enough RSBS users that the load term pushes consumption past the harvest.
    for (int k = 0; k < 20; ++k)
        sc.user(560.0 + 4.0 * k, 30.0);
    const AlgoParams p;
    const auto res = run_algorithm1(sc.build(), SchemeKind::Joint, p);
    const auto& rsbs = res.state.stations[1];
    if (rsbs.active()) {
        CHECK(rsbs.p_tx < 30.0);
        CHECK(ledger_consumption(rsbs, p) <= rsbs.harvested);
    }
    check_final_state(res.state, p, true);
}

TEST_CASE("proposed scheme: the macro absorbs the least-loaded CSBSs up to N_th")
{
    Scenario sc;
    sc.add(BsKind::Csbs, 800, 0);
    sc.add(BsKind::Csbs, -800, 0);
    sc.add(BsKind::Csbs, 0, 800);
    auto cluster = [&](double x, double y, int n) {
        for (int k = 0; k < n; ++k)
            sc.user(x + 10.0 * k, y + 5.0);
    };
    cluster(800, 0, 2);
    cluster(-800, 0, 3);
    cluster(0, 800, 4);
    AlgoParams p;
    p.n_th = 3;
    const auto state = sc.build();

    const auto joint = run_algorithm1(state, SchemeKind::Joint, p);
    for (int c = 1; c <= 3; ++c)
        CHECK(joint.state.stations[static_cast<std::size_t>(c)].active());

    const auto proposed = run_algorithm1(state, SchemeKind::ProposedJoint, p);
    CHECK(proposed.state.stations[1].mode == BsMode::Sleep); // 2 users, macro then at 2 <= 3
    CHECK(proposed.state.stations[2].mode == BsMode::Sleep); // 3 users, macro then at 5
    CHECK(proposed.state.stations[3].active());
    CHECK(proposed.state.stations[0].users == 5);
    CHECK(grid_power(proposed.state.stations) < grid_power(joint.state.stations));

    p.n_th = 200;
    const auto all = run_algorithm1(state, SchemeKind::ProposedJoint, p);
    for (int c = 1; c <= 3; ++c)
        CHECK(all.state.stations[static_cast<std::size_t>(c)].mode == BsMode::Sleep);
    CHECK(all.state.stations[0].users == 9);
}

TEST_CASE("run_algorithm1 rejects the baseline scheme")
{
    Scenario sc;
    CHECK_THROWS_AS(run_algorithm1(sc.build(), SchemeKind::NearestBs, AlgoParams{}), std::invalid_argument);
}

TEST_CASE("final states of every scheme satisfy the structural invariants")
{
    ModelConfig cfg;
    const auto layout = build_layout(cfg.layout);
    int checked = 0;
    for (double density : {20.0, 150.0, 600.0, 1500.0}) {
        for (std::uint64_t s = 0; s < 6; ++s) {
            const auto draw = draw_sample(cfg, layout, density, sample_seed(9, density, s));
            for (double lambda : {0.0, 44.0, 45.0, 120.0}) {
                const auto state = prepare_state(cfg, layout, draw, lambda);
                for (auto scheme : {SchemeKind::NearestBs, SchemeKind::Joint, SchemeKind::ProposedJoint}) {
                    const auto res = run_scheme(state, scheme, cfg.algo);
                    CHECK(res.iterations <= cfg.algo.max_iter);
                    check_final_state(res.state, cfg.algo, scheme != SchemeKind::NearestBs);

                    // the final association is exactly what a fresh pass produces
                    auto again = res.state;
                    associate_all(again, cfg.algo,
                                  scheme == SchemeKind::NearestBs ? AssociationRule::Nearest
                                                                  : AssociationRule::TierPriority);
                    for (std::size_t u = 0; u < again.users.size(); ++u) {
                        CHECK(again.users[u].server == res.state.users[u].server);
                        CHECK(again.users[u].cls == res.state.users[u].cls);
                    }
                    ++checked;
                }
            }
        }
    }
    CHECK(checked == 4 * 6 * 4 * 3);
}

TEST_CASE("proposed never draws more grid power than joint while the macro has room")
{
    ModelConfig cfg;
    const auto layout = build_layout(cfg.layout);
    for (double density : {20.0, 50.0, 100.0, 200.0}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto draw = draw_sample(cfg, layout, density, sample_seed(4, density, s));
            const auto state = prepare_state(cfg, layout, draw, 44.0);
            const auto joint = run_algorithm1(state, SchemeKind::Joint, cfg.algo);
            const auto proposed = run_algorithm1(state, SchemeKind::ProposedJoint, cfg.algo);
            if (joint.state.stations[0].users <= cfg.algo.n_th)
                CHECK(grid_power(proposed.state.stations) <= grid_power(joint.state.stations) + 1e-9);
        }
    }
}

TEST_CASE("a one-sweep budget still yields a legal state")
{
    ModelConfig cfg;
    cfg.algo.max_iter = 1;
    const auto layout = build_layout(cfg.layout);
    const auto draw = draw_sample(cfg, layout, 400.0, 77);
    const auto state = prepare_state(cfg, layout, draw, 44.0);
    const auto res = run_algorithm1(state, SchemeKind::ProposedJoint, cfg.algo);
    CHECK(res.iterations == 1);
    check_final_state(res.state, cfg.algo, true);
}

TEST_CASE("scheme names round-trip")
{
    for (auto s : {SchemeKind::NearestBs, SchemeKind::Joint, SchemeKind::ProposedJoint})
        CHECK(parse_scheme(to_string(s)) == s);
    CHECK_FALSE(parse_scheme("greedy").has_value());
}
