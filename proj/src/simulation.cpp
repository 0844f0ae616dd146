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

#include "hcn/simulation.hpp"

#include "hcn/channel.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>
#include <random>
#include <thread>
#include <tuple>

namespace hcn {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t master, double density, std::uint64_t sample_index)
{
    const std::uint64_t cell = mix64(master ^ mix64(std::bit_cast<std::uint64_t>(density)));
    return mix64(cell ^ mix64(sample_index + 0x632be59bd9b4e019ULL));
}

SampleDraw draw_sample(const ModelConfig& cfg, const NetworkLayout& layout, double density, std::uint64_t seed)
{
    SampleDraw draw;
    std::mt19937_64 user_rng(mix64(seed ^ 0x1));
    std::mt19937_64 fading_rng(mix64(seed ^ 0x2));
    std::mt19937_64 harvest_rng(mix64(seed ^ 0x3));

    draw.users = sample_users(density, layout.macro_radius, user_rng);
    const auto n_users = static_cast<Eigen::Index>(draw.users.size());
    const auto n_bs = static_cast<Eigen::Index>(layout.sites.size());
    draw.fading = cfg.channel.deterministic_fading ? Eigen::MatrixXd::Ones(n_users, n_bs)
                                                   : rayleigh_fading(n_users, n_bs, fading_rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    draw.harvest_uniform.resize(layout.sites.size());
    for (auto& u : draw.harvest_uniform)
        u = unit(harvest_rng);

    const auto stations = make_stations(layout, cfg.macro, cfg.small_cell);
    draw.geometry = make_geometry(draw.users, stations, draw.fading, cfg.channel.path_loss_exponent);
    return draw;
}

NetworkState prepare_state(const ModelConfig& cfg, const NetworkLayout& layout, const SampleDraw& draw,
                           double lambda_e)
{
    auto stations = make_stations(layout, cfg.macro, cfg.small_cell);
    for (std::size_t b = 0; b < stations.size(); ++b)
        if (stations[b].harvests())
            stations[b].harvested = harvest_energy(lambda_e, draw.harvest_uniform[b]);
    NetworkState state;
    state.stations = std::move(stations);
    state.geometry = draw.geometry;
    state.users.reserve(draw.users.size());
    for (const auto& p : draw.users)
        state.users.push_back(UserTerminal{p});
    return state;
}

namespace {

SampleOutcome measure(const AssociationResult& result, const AlgoParams& params)
{
    const auto& final_state = result.state;

    SampleOutcome out;
    out.grid_power = grid_power(final_state.stations);
    out.sum_rate = sum_rate(final_state);
    out.converged = result.converged;
    out.iterations = result.iterations;
    out.users = static_cast<int>(final_state.users.size());
    for (const auto& u : final_state.users)
        if (u.server == kUnserved)
            ++out.unserved;
    for (const auto& bs : final_state.stations)
        if (bs.kind == BsKind::Rsbs && bs.active() && ledger_consumption(bs, params) > bs.harvested)
            ++out.causality_violations;
    return out;
}

} // namespace

SampleOutcome evaluate(const NetworkState& state, SchemeKind scheme, const AlgoParams& params)
{
    return measure(run_scheme(state, scheme, params), params);
}

std::vector<SampleOutcome> evaluate_schemes(const NetworkState& state, const std::vector<SchemeKind>& schemes,
                                            const AlgoParams& params)
{
    std::vector<SampleOutcome> out;
    out.reserve(schemes.size());
    std::optional<AssociationResult> controlled;
    for (auto scheme : schemes) {
        if (scheme == SchemeKind::NearestBs) {
            out.push_back(measure(run_nearest_bs(state, params), params));
            continue;
        }
        if (!controlled)
            controlled = run_power_control(state, params);
        out.push_back(measure(finish_joint(*controlled, scheme, params), params));
    }
    return out;
}

SampleOutcome run_sample(const ModelConfig& cfg, SchemeKind scheme, double density, double lambda_e,
                         std::uint64_t seed)
{
    const auto layout = build_layout(cfg.layout);
    const auto draw = draw_sample(cfg, layout, density, seed);
    return evaluate(prepare_state(cfg, layout, draw, lambda_e), scheme, cfg.algo);
}

namespace {

Estimate estimate(const std::vector<double>& x)
{
    Estimate e;
    const auto n = static_cast<double>(x.size());
    if (x.empty())
        return e;
    double sum = 0.0;
    for (double v : x)
        sum += v;
    e.mean = sum / n;
    if (x.size() < 2)
        return e;
    double ss = 0.0;
    for (double v : x)
        ss += (v - e.mean) * (v - e.mean);
    e.stderr_mean = std::sqrt(ss / (n - 1.0) / n);
    return e;
}

} // namespace

MetricsRow aggregate(SchemeKind scheme, double density, double lambda_e, const std::vector<SampleOutcome>& samples,
                     EeEstimator estimator)
{
    MetricsRow row;
    row.scheme = scheme;
    row.density = density;
    row.lambda_e = lambda_e;
    row.samples = static_cast<int>(samples.size());

    std::vector<double> power;
    std::vector<double> rate;
    std::vector<double> ee;
    long users = 0;
    long unserved = 0;
    int unconverged = 0;
    for (const auto& s : samples) {
        power.push_back(s.grid_power);
        rate.push_back(s.sum_rate);
        ee.push_back(s.grid_power > 0.0 ? s.sum_rate / s.grid_power : 0.0);
        users += s.users;
        unserved += s.unserved;
        unconverged += s.converged ? 0 : 1;
        row.causality_violations += s.causality_violations;
    }
    row.grid_power = estimate(power);
    row.sum_rate = estimate(rate);

    if (estimator == EeEstimator::MeanOfRatios) {
        row.energy_efficiency = estimate(ee);
    } else if (row.grid_power.mean > 0.0) {
        const double n = static_cast<double>(samples.size());
        const double r = row.sum_rate.mean;
        const double p = row.grid_power.mean;
        row.energy_efficiency.mean = r / p;
        if (samples.size() >= 2) {
            double cov = 0.0;
            for (std::size_t i = 0; i < samples.size(); ++i)
                cov += (rate[i] - r) * (power[i] - p);
            cov /= (n - 1.0);
            const double var_r = row.sum_rate.stderr_mean * row.sum_rate.stderr_mean * n;
            const double var_p = row.grid_power.stderr_mean * row.grid_power.stderr_mean * n;
            const double rel = var_p / (p * p) + (r != 0.0 ? var_r / (r * r) - 2.0 * cov / (r * p) : 0.0);
            const double ee_mean = r / p;
            row.energy_efficiency.stderr_mean =
                r != 0.0 ? std::abs(ee_mean) * std::sqrt(std::max(0.0, rel) / n) : std::sqrt(var_r / n) / p;
        }
    }

    row.unconverged_fraction = samples.empty() ? 0.0 : static_cast<double>(unconverged) / samples.size();
    row.unserved_fraction = users == 0 ? 0.0 : static_cast<double>(unserved) / static_cast<double>(users);
    return row;
}

void sort_rows(std::vector<MetricsRow>& rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
        return std::tuple(static_cast<int>(a.scheme), a.lambda_e, a.density) <
               std::tuple(static_cast<int>(b.scheme), b.lambda_e, b.density);
    });
}

SweepResult run_sweep(const ModelConfig& cfg, const SweepConfig& sweep, const SweepControl& control)
{
    const auto layout = build_layout(cfg.layout);
    const std::size_t n_lambda = sweep.lambda_e.size();
    const std::size_t n_scheme = sweep.schemes.size();
    const std::size_t n_combo = n_lambda * n_scheme;
    const auto n_samples = static_cast<std::size_t>(std::max(0, sweep.samples));
    const int threads = std::max(1, control.threads);

    auto cancelled = [&] { return control.cancel && control.cancel->load(std::memory_order_relaxed); };

    SweepResult result;
    for (double density : sweep.densities) {
        // outcomes[combo][sample], filled by whichever worker owns the sample.
        std::vector<std::vector<SampleOutcome>> outcomes(n_combo, std::vector<SampleOutcome>(n_samples));
        std::atomic<std::size_t> next{0};

        auto worker = [&] {
            for (std::size_t s = next.fetch_add(1); s < n_samples; s = next.fetch_add(1)) {
                if (cancelled())
                    return;
                const auto draw = draw_sample(cfg, layout, density, sample_seed(sweep.seed, density, s));
                for (std::size_t l = 0; l < n_lambda; ++l) {
                    const auto state = prepare_state(cfg, layout, draw, sweep.lambda_e[l]);
                    auto per_scheme = evaluate_schemes(state, sweep.schemes, cfg.algo);
                    for (std::size_t k = 0; k < n_scheme; ++k)
                        outcomes[l * n_scheme + k][s] = per_scheme[k];
                }
            }
        };

        if (threads == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back(worker);
        }

        if (cancelled()) {
            result.complete = false;
            break;
        }

        std::vector<MetricsRow> cell_rows;
        for (std::size_t l = 0; l < n_lambda; ++l)
            for (std::size_t k = 0; k < n_scheme; ++k)
                cell_rows.push_back(aggregate(sweep.schemes[k], density, sweep.lambda_e[l],
                                              outcomes[l * n_scheme + k], sweep.ee_estimator));
        if (control.on_density_done)
            control.on_density_done(cell_rows);
        result.rows.insert(result.rows.end(), cell_rows.begin(), cell_rows.end());
    }
    sort_rows(result.rows);
    return result;
}

} // namespace hcn
