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

// hcn-sim command-line front end.
//
//   hcn-sim run [config.toml] [--samples N] [--seed S] [--out DIR] ...
//   hcn-sim validate config.toml
//   hcn-sim oracle

#include "hcn/config.hpp"
#include "hcn/format.hpp"
#include "hcn/oracle.hpp"
#include "hcn/report.hpp"
#include "hcn/simulation.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int)
{
    g_cancel.store(true);
}

struct RunOptions {
    std::string config;
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::vector<std::string> schemes;
    bool deterministic_fading = false;
};

int default_threads()
{
    if (const char* env = std::getenv("HCN_SIM_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1)
                return n;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring HCN_SIM_THREADS=" << env << "\n";
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

hcn::RunConfig effective_config(const RunOptions& opt)
{
    hcn::RunConfig cfg = opt.config.empty() ? hcn::RunConfig{} : hcn::load_config(opt.config);
    if (opt.samples)
        cfg.sweep.samples = *opt.samples;
    if (opt.seed)
        cfg.sweep.seed = *opt.seed;
    if (opt.out)
        cfg.output.directory = *opt.out;
    if (opt.deterministic_fading)
        cfg.model.channel.deterministic_fading = true;
    if (!opt.schemes.empty()) {
        cfg.sweep.schemes.clear();
        for (const auto& name : opt.schemes) {
            const auto s = hcn::parse_scheme(name);
            if (!s)
                throw hcn::ConfigError("--scheme", "unknown scheme \"" + name + "\"");
            cfg.sweep.schemes.push_back(*s);
        }
    }
    hcn::validate(cfg);
    return cfg;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

void print_summary(const std::vector<hcn::MetricsRow>& rows)
{
    std::printf("%-15s %8s %8s %14s %16s %14s\n", "scheme", "lambda_e", "density", "grid_power_w", "sum_rate_bps",
                "ee_bit_per_j");
    for (const auto& r : rows)
        std::printf("%-15s %8s %8s %14.2f %16.1f %14.2f\n", std::string(hcn::to_string(r.scheme)).c_str(),
                    hcn::format_number(r.lambda_e).c_str(), hcn::format_number(r.density).c_str(),
                    r.grid_power.mean, r.sum_rate.mean, r.energy_efficiency.mean);
}

int cmd_run(const RunOptions& opt)
{
    const auto cfg = effective_config(opt);
    const std::filesystem::path dir = cfg.output.directory;
    std::filesystem::create_directories(dir);
    write_text(dir / "config.echo.toml", hcn::to_toml(cfg));

    hcn::SweepControl control;
    control.threads = opt.threads ? *opt.threads : default_threads();
    control.cancel = &g_cancel;
    control.on_density_done = [](const std::vector<hcn::MetricsRow>& rows) {
        if (!rows.empty())
            std::cerr << "density " << hcn::format_number(rows.front().density) << " done\n";
    };

    std::signal(SIGINT, on_sigint);
    const auto result = hcn::run_sweep(cfg.model, cfg.sweep, control);
    std::signal(SIGINT, SIG_DFL);

    write_text(dir / "metrics.csv", hcn::metrics_csv(result.rows));
    if (cfg.output.plot_data && !result.rows.empty())
        hcn::emit_plot_data(result.rows, dir);

    if (!result.complete) {
        std::cerr << "interrupted: wrote " << result.rows.size() << " completed rows to "
                  << (dir / "metrics.csv").string() << "\n";
        return kExitInterrupted;
    }
    print_summary(result.rows);
    std::cerr << "wrote " << (dir / "metrics.csv").string() << "\n";
    return 0;
}

int cmd_validate(const std::string& path)
{
    const auto cfg = hcn::load_config(path);
    try {
        hcn::build_layout(cfg.model.layout);
    } catch (const std::exception& e) {
        throw hcn::ConfigError("layout", e.what());
    }
    std::cout << path << ": ok\n";
    return 0;
}

int cmd_oracle(int instances, int sir_cases, std::uint64_t seed)
{
    const auto r = hcn::oracle::run_suite(instances, sir_cases, seed);
    auto line = [](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    };
    line(r.association_mismatches == 0, "association: " + std::to_string(r.association_mismatches) + " of " +
                                            std::to_string(r.association_instances) + " instances differ");
    line(r.single_user_mismatches == 0, "associate_user: " + std::to_string(r.single_user_mismatches) + " of " +
                                            std::to_string(r.single_user_checks) + " users differ");
    line(r.nearest_mismatches == 0, "nearest_bs: " + std::to_string(r.nearest_mismatches) + " of " +
                                        std::to_string(r.nearest_instances) + " instances differ");
    line(r.sir_max_rel_error <= 1e-12, "sir: max relative error " + hcn::format_number(r.sir_max_rel_error) +
                                           " over " + std::to_string(r.sir_cases) + " cases");
    return r.passed() ? 0 : kExitFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo simulator for energy-harvesting heterogeneous cellular networks"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run the sweep and write metrics.csv, config.echo.toml and plot data");
    run_cmd->add_option("config-file", run.config, "Config file (defaults apply when omitted)")->check(CLI::ExistingFile);
    run_cmd->add_option("--config", run.config, "Config file")->check(CLI::ExistingFile);
    run_cmd->add_option("--samples", run.samples, "Samples per cell")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", run.seed, "Master seed");
    run_cmd->add_option("--out", run.out, "Output directory");
    run_cmd->add_option("--threads", run.threads, "Worker threads (env HCN_SIM_THREADS)")->check(CLI::PositiveNumber);
    run_cmd->add_option("--scheme", run.schemes, "nearest_bs, joint, proposed_joint (repeatable)")->delimiter(',');
    run_cmd->add_flag("--deterministic-fading", run.deterministic_fading, "Unit fading on every link");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check a config file without running");
    validate_cmd->add_option("config-file", validate_path, "Config file")->required()->check(CLI::ExistingFile);

    int instances = 500;
    int sir_cases = 100;
    std::uint64_t oracle_seed = 1;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare against brute-force references on small instances");
    oracle_cmd->add_option("--instances", instances, "Random association instances")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--sir-cases", sir_cases, "Random three-station SIR checks")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--seed", oracle_seed, "Instance seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd)
            return cmd_run(run);
        if (*validate_cmd)
            return cmd_validate(validate_path);
        return cmd_oracle(instances, sir_cases, oracle_seed);
    } catch (const hcn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
