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

#include "hcn/config.hpp"

#include <doctest.h>

using namespace hcn;

namespace {

std::string field_of(std::string_view text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

} // namespace

TEST_CASE("empty file gives the documented defaults")
{
    const auto cfg = parse_config("");
    CHECK(cfg.model.layout.n_csbs == 24);
    CHECK(cfg.model.layout.n_rsbs == 16);
    CHECK(cfg.model.layout.n_hsbs == 9);
    CHECK(cfg.model.layout.macro_radius == 1730.0);
    CHECK(cfg.model.macro.p_const == 354.44);
    CHECK(cfg.model.macro.beta == 21.45);
    CHECK(cfg.model.small_cell.p_const == 38.0);
    CHECK(cfg.model.small_cell.beta == 5.5);
    CHECK(cfg.model.channel.path_loss_exponent == 3.5);
    CHECK(cfg.model.algo.u_min == 2);
    CHECK(cfg.model.algo.n_th == 200);
    CHECK(cfg.model.algo.margin == 1.0);
    CHECK(cfg.sweep.samples == 5000);
    CHECK(cfg.sweep.lambda_e == std::vector<double>{44.0, 45.0});
    CHECK(cfg.sweep.schemes.size() == 3);
}

TEST_CASE("values, comments and tables")
{
    const auto cfg = parse_config(R"(
# comment line
[layout]
n_rsbs = 8          # trailing comment
placement = "uniform"
placement_seed = 18446744073709551615

[power.sbs]
p_const = 40.5
bandwidth = 5e6

[channel]
fading = "none"

[algorithm]
rf_only_ledger = true
step = 0.05

[sweep]
schemes = ["joint", "proposed_joint",]
densities = [0, 1_000]
lambda_e = [44.5]
samples = 12
seed = 99

[output]
directory = "runs/a # not a comment"
plot_data = false
)");
    CHECK(cfg.model.layout.n_rsbs == 8);
    CHECK(cfg.model.layout.placement == Placement::Uniform);
    CHECK(cfg.model.layout.placement_seed == 18446744073709551615ULL);
    CHECK(cfg.model.small_cell.p_const == 40.5);
    CHECK(cfg.model.channel.deterministic_fading);
    CHECK(cfg.model.algo.rf_only_ledger);
    CHECK(cfg.model.algo.step == 0.05);
    CHECK(cfg.sweep.schemes == std::vector<SchemeKind>{SchemeKind::Joint, SchemeKind::ProposedJoint});
    CHECK(cfg.sweep.densities == std::vector<double>{0.0, 1000.0});
    CHECK(cfg.sweep.lambda_e == std::vector<double>{44.5});
    CHECK(cfg.sweep.samples == 12);
    CHECK(cfg.sweep.seed == 99);
    CHECK(cfg.output.directory == "runs/a # not a comment");
    CHECK_FALSE(cfg.output.plot_data);
}

TEST_CASE("field-level diagnostics")
{
    CHECK(field_of("[layout]\nn_rsbs = -1\n") == "layout.n_rsbs");
    CHECK(field_of("[layout]\nmacro_radius = 0\n") == "layout.macro_radius");
    CHECK(field_of("[layout]\nn_rsbs = 1.5\n") == "layout.n_rsbs");
    CHECK(field_of("[layout]\nbogus = 1\n") == "layout.bogus");
    CHECK(field_of("[power.sbs]\np_tx_min = 0\n") == "power.sbs.p_tx_min");
    CHECK(field_of("[power.mbs]\np_tx = 50\n") == "power.mbs.p_tx");
    CHECK(field_of("[algorithm]\nstep = 1.5\n") == "algorithm.step");
    CHECK(field_of("[sweep]\nschemes = [\"greedy\"]\n") == "sweep.schemes");
    CHECK(field_of("[sweep]\ndensities = []\n") == "sweep.densities");
    CHECK(field_of("[sweep]\nlambda_e = [44, 800]\n") == "sweep.lambda_e");
    CHECK(field_of("[sweep]\nsamples = 0\n") == "sweep.samples");
    CHECK(field_of("[channel]\nfading = \"rician\"\n") == "channel.fading");
    CHECK(field_of("[output]\nplot_data = 1\n") == "output.plot_data");
    CHECK(field_of("[layout]\nn_rsbs = 1\nn_rsbs = 2\n") == "layout.n_rsbs");
}

TEST_CASE("syntax errors name the line")
{
    CHECK(field_of("[layout\n") == "line 1");
    CHECK(field_of("\n\nn_rsbs 3\n") == "line 3");
    CHECK(field_of("[sweep]\ndensities = [1, 2\n") == "line 2");
    CHECK(field_of("[output]\ndirectory = \"open\n") == "line 2");
    CHECK(field_of("[layout]\nn_rsbs = 3 4\n") == "line 2");
}

TEST_CASE("echo round-trips every field")
{
    RunConfig cfg;
    cfg.model.layout.placement = Placement::Uniform;
    cfg.model.layout.placement_seed = 77;
    cfg.model.layout.min_separation = 12.25;
    cfg.model.macro.sleep_power = 0.1;
    cfg.model.small_cell.p_tx_min = 0.3;
    cfg.model.channel.path_loss_exponent = 3.7;
    cfg.model.channel.deterministic_fading = true;
    cfg.model.algo.margin = 1.0 / 3.0;
    cfg.model.algo.max_iter = 17;
    cfg.sweep.schemes = {SchemeKind::ProposedJoint};
    cfg.sweep.densities = {0.1, 2.0 / 3.0, 1e5};
    cfg.sweep.seed = 18446744073709551615ULL;
    cfg.sweep.ee_estimator = EeEstimator::MeanOfRatios;
    cfg.output.directory = "with \"quotes\" \\ and # hash";

    const auto text = to_toml(cfg);
    const auto back = parse_config(text);
    CHECK(to_toml(back) == text);
    CHECK(back.model.algo.margin == cfg.model.algo.margin);
    CHECK(back.sweep.densities == cfg.sweep.densities);
    CHECK(back.sweep.seed == cfg.sweep.seed);
    CHECK(back.output.directory == cfg.output.directory);
    CHECK(back.sweep.ee_estimator == EeEstimator::MeanOfRatios);
    CHECK(back.model.layout.placement == Placement::Uniform);
}

TEST_CASE("validate rejects inconsistent programmatic configs")
{
    RunConfig cfg;
    cfg.model.algo.subcarriers_per_user = 600;
    try {
        validate(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "algorithm.subcarriers_per_user");
    }
}
