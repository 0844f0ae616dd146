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

#include "hcn/channel.hpp"
#include "hcn/network.hpp"
#include "hcn/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hcn;

namespace {

BaseStation station(int id, BsKind kind, double x, double y, double p_tx)
{
    BaseStation bs;
    bs.id = id;
    bs.kind = kind;
    bs.position = Position{x, y};
    bs.nominal_radius = kind == BsKind::Mbs ? 1730.0 : 350.0;
    bs.model = kind == BsKind::Mbs ? macro_power_defaults() : small_cell_power_defaults();
    bs.p_tx = p_tx;
    return bs;
}

NetworkState unit_fading_state(std::vector<BaseStation> stations, const std::vector<Position>& users)
{
    const auto ones = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(users.size()),
                                            static_cast<Eigen::Index>(stations.size()));
    return make_state(std::move(stations), users, ones, 3.5);
}

} // namespace

TEST_CASE("received power")
{
    CHECK(received_power(30.0, LinkGain<double>{3.5, 1.0, 1.0}) == 30.0);
    CHECK(received_power(0.0, LinkGain<double>{3.5, 1.0, 100.0}) == 0.0);
    CHECK(received_power(30.0, LinkGain<double>{3.5, 1.0, 100.0}) ==
          doctest::Approx(30.0 * std::pow(100.0, -3.5)).epsilon(1e-14));
    // 100^-3.5 = 1e-7
    CHECK(received_power(30.0, LinkGain<double>{3.5, 1.0, 100.0}) == doctest::Approx(3e-6).epsilon(1e-14));
    CHECK_THROWS_AS(received_power(30.0, LinkGain<double>{3.5, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("received power in single precision")
{
    CHECK(received_power(30.0f, LinkGain<float>{3.5f, 1.0f, 100.0f}) == doctest::Approx(3e-6).epsilon(1e-6));
}

TEST_CASE("user rate")
{
    CHECK(user_rate(10e3, 0.0) == 0.0);
    CHECK(user_rate(10e3, 1.0) == 10000.0);
    CHECK(user_rate(10e3, 3.0) == 20000.0);
    CHECK(user_rate(20e3, 3.0) > user_rate(10e3, 3.0));
    CHECK(user_rate(10e3, 3.5) > user_rate(10e3, 3.0));
}

TEST_CASE("distance and link gain matrices")
{
    Eigen::Matrix2Xd users(2, 2);
    users << 0, 3,
             0, 4;
    Eigen::Matrix2Xd stations(2, 1);
    stations << 0, 0;
    const Eigen::MatrixXd d = distance_matrix(users, Eigen::Matrix2Xd(stations.colwise() + Eigen::Vector2d(1, 0)));
    CHECK(d(0, 0) == doctest::Approx(1.0));
    CHECK(d(1, 0) == doctest::Approx(std::sqrt(4.0 + 16.0)));
    CHECK_THROWS_AS(link_gain_matrix(distance_matrix(users, stations), Eigen::MatrixXd::Ones(2, 1), 3.5),
                    std::domain_error);
}

TEST_CASE("SIR is one for a user equidistant from two equal stations")
{
    auto st = unit_fading_state({station(0, BsKind::Mbs, -100, 0, 30), station(1, BsKind::Csbs, 100, 0, 30)},
                                {Position{0, 50}});
    CHECK(sir(st, 0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sir(st, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("SIR without interferers is the cap")
{
    auto st = unit_fading_state({station(0, BsKind::Mbs, 0, 0, 40), station(1, BsKind::Csbs, 300, 0, 30)},
                                {Position{10, 0}});
    st.stations[1].mode = BsMode::Sleep;
    CHECK(sir(st, 0, 0) == kSirCap);
}

TEST_CASE("SIR from an inactive server is a logic error")
{
    auto st = unit_fading_state({station(0, BsKind::Mbs, 0, 0, 40), station(1, BsKind::Rsbs, 300, 0, 30)},
                                {Position{10, 0}});
    st.stations[1].mode = BsMode::Off;
    CHECK_THROWS_AS(sir(st, 0, 1), std::logic_error);
}

TEST_CASE("SIR matches an independent re-summation on a fixed 3-station instance")
{
    std::vector<oracle::Station> ref(3);
    const double xs[] = {0.0, 400.0, -250.0};
    const double ys[] = {0.0, 120.0, 310.0};
    const double ps[] = {40.0, 12.5, 30.0};
    const BsKind kinds[] = {BsKind::Mbs, BsKind::Rsbs, BsKind::Csbs};
    std::vector<BaseStation> stations;
    for (int i = 0; i < 3; ++i) {
        ref[i].kind = kinds[i];
        ref[i].x = xs[i];
        ref[i].y = ys[i];
        ref[i].p_tx = ps[i];
        stations.push_back(station(i, kinds[i], xs[i], ys[i], ps[i]));
    }
    const oracle::Point2 user{180.0, 95.0};
    const auto st = unit_fading_state(stations, {Position{user[0], user[1]}});
    for (int server = 0; server < 3; ++server) {
        const double want = oracle::sir(ref, user, server, 3.5);
        CHECK(std::abs(sir(st, 0, server) - want) <= 1e-12 * want);
    }
}

TEST_CASE("SIR is invariant under common power scaling")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(-800, 800), pw(1, 40);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<BaseStation> stations{station(0, BsKind::Mbs, 0, 0, 40)};
        for (int k = 1; k < 5; ++k)
            stations.push_back(station(k, BsKind::Csbs, pos(rng), pos(rng), pw(rng)));
        const Position u{pos(rng), pos(rng)};
        auto a = unit_fading_state(stations, {u});
        auto b = a;
        const double c = 0.01 + 10.0 * std::uniform_real_distribution<double>(0, 1)(rng);
        for (auto& bs : b.stations)
            bs.p_tx *= c;
        int best_a = 0, best_b = 0;
        for (int s = 0; s < 5; ++s) {
            CHECK(sir(b, 0, s) == doctest::Approx(sir(a, 0, s)).epsilon(1e-12));
            if (sir(a, 0, s) > sir(a, 0, best_a))
                best_a = s;
            if (sir(b, 0, s) > sir(b, 0, best_b))
                best_b = s;
        }
        CHECK(best_a == best_b);
    }
}

TEST_CASE("switching off an interferer never lowers SIR")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> pos(-800, 800), pw(1, 30);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<BaseStation> stations{station(0, BsKind::Mbs, 0, 0, 40)};
        for (int k = 1; k < 5; ++k)
            stations.push_back(station(k, BsKind::Rsbs, pos(rng), pos(rng), pw(rng)));
        std::vector<Position> users;
        for (int k = 0; k < 6; ++k)
            users.emplace_back(pos(rng), pos(rng));
        auto st = make_state(stations, users, rayleigh_fading(6, 5, rng), 3.5);
        auto off = st;
        const int victim = 1 + static_cast<int>(rng() % 4);
        off.stations[static_cast<std::size_t>(victim)] = mode_transition(off.stations[static_cast<std::size_t>(victim)], BsMode::Off);
        for (int u = 0; u < 6; ++u)
            for (int s = 0; s < 5; ++s)
                if (s != victim)
                    CHECK(sir(off, u, s) >= sir(st, u, s));
    }
}

TEST_CASE("Rayleigh fading has unit mean")
{
    std::mt19937_64 rng(8);
    const auto h = rayleigh_fading(400, 50, rng);
    CHECK(h.minCoeff() >= 0.0);
    CHECK(h.mean() == doctest::Approx(1.0).epsilon(0.02));
}
