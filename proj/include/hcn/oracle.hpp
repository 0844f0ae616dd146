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

// Brute-force reference models for small instances. Deliberately shares no
// code with the production association path: coverage is tested through
// received power against the nominal cell-edge power, assignments come from
// exhaustive enumeration, and SIR is summed from raw coordinates.

#include "hcn/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace hcn::oracle {

struct Station {
    BsKind kind = BsKind::Mbs;
    double x = 0.0;
    double y = 0.0;
    bool active = true;
    double p_tx = 0.0;
    double p_nominal = 0.0;
    double r_nominal = 0.0;
    int capacity = 0;      ///< users it may still take
    int subcarriers = 0;   ///< N, for the power model
    double p_const = 0.0;
    double beta = 0.0;
    double harvested = 0.0;
};

using Point2 = std::array<double, 2>;

struct Instance {
    std::vector<Station> stations; ///< index is the station id
    std::vector<Point2> users;
    double alpha = 3.5;
};

/// Lexicographically best assignment in user-id order: each user's key is
/// (tier rank, distance, id), the MBS ranks after every small cell and being
/// unserved ranks last. With `tier_priority` false all small cells share a rank.
/// Entries are station ids or -1.
std::vector<int> best_assignment(const Instance& inst, bool tier_priority);

/// Nearest-cell baseline: all stations Active at nominal power, RSBSs that
/// cannot cover their consumption from harvest are switched off until stable.
std::vector<int> nearest_bs_servers(Instance inst);

/// SIR at `user` served by `server` with unit fading, summed term by term.
double sir(const std::vector<Station>& stations, const Point2& user, int server, double alpha);

struct SuiteReport {
    int association_instances = 0;
    int association_mismatches = 0;
    int single_user_checks = 0;
    int single_user_mismatches = 0;
    int nearest_instances = 0;
    int nearest_mismatches = 0;
    int sir_cases = 0;
    double sir_max_rel_error = 0.0;

    bool passed(double sir_tolerance = 1e-12) const
    {
        return association_mismatches == 0 && single_user_mismatches == 0 && nearest_mismatches == 0 &&
               sir_max_rel_error <= sir_tolerance;
    }
};

/// Random instances with at most 3 small cells and 6 users, compared against
/// the library. `sir_cases` three-station SIR checks run alongside.
SuiteReport run_suite(int instances, int sir_cases, std::uint64_t seed);

} // namespace hcn::oracle
