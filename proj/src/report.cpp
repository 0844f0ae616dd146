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

#include "hcn/report.hpp"

#include "hcn/format.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hcn {

namespace {

std::string series_id(const MetricsRow& row)
{
    return std::string(to_string(row.scheme)) + "@" + format_number(row.lambda_e);
}

const Estimate& metric(const MetricsRow& row, Figure figure)
{
    switch (figure) {
    case Figure::Power: return row.grid_power;
    case Figure::Throughput: return row.sum_rate;
    case Figure::EnergyEfficiency: return row.energy_efficiency;
    }
    return row.grid_power;
}

std::vector<MetricsRow> sorted(const std::vector<MetricsRow>& rows)
{
    if (rows.empty())
        throw std::invalid_argument("no rows to plot");
    auto out = rows;
    sort_rows(out);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

} // namespace

void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows)
{
    os << kMetricsSchema << '\n' << kMetricsHeader << '\n';
    for (const auto& r : rows) {
        os << to_string(r.scheme) << ',' << format_number(r.lambda_e) << ',' << format_number(r.density) << ','
           << format_number(r.grid_power.mean) << ',' << format_number(r.grid_power.stderr_mean) << ','
           << format_number(r.sum_rate.mean) << ',' << format_number(r.sum_rate.stderr_mean) << ','
           << format_number(r.energy_efficiency.mean) << ',' << format_number(r.energy_efficiency.stderr_mean)
           << ',' << format_number(r.unconverged_fraction) << ',' << format_number(r.unserved_fraction) << ','
           << r.samples << '\n';
    }
}

std::string metrics_csv(const std::vector<MetricsRow>& rows)
{
    std::ostringstream os;
    write_metrics_csv(os, rows);
    return os.str();
}

std::string_view file_stem(Figure figure)
{
    switch (figure) {
    case Figure::Power: return "power";
    case Figure::Throughput: return "throughput";
    case Figure::EnergyEfficiency: return "ee";
    }
    return "?";
}

std::string plot_table(const std::vector<MetricsRow>& rows, Figure figure)
{
    std::ostringstream os;
    os << "# hcn-sim plot v1 " << file_stem(figure) << '\n' << "series,scheme,lambda_e,density,value,stderr\n";
    for (const auto& r : sorted(rows)) {
        const auto& m = metric(r, figure);
        os << series_id(r) << ',' << to_string(r.scheme) << ',' << format_number(r.lambda_e) << ','
           << format_number(r.density) << ',' << format_number(m.mean) << ',' << format_number(m.stderr_mean)
           << '\n';
    }
    return os.str();
}

std::string plot_script(const std::vector<MetricsRow>& rows, Figure figure)
{
    const auto rs = sorted(rows);
    const std::string stem(file_stem(figure));
    const char* ylabel = figure == Figure::Power        ? "on-grid power (W)"
                         : figure == Figure::Throughput ? "sum rate (bit/s)"
                                                        : "energy efficiency (bit/J)";
    std::ostringstream os;
    os << "# gnuplot " << stem << ".gp\n"
       << "set datafile separator \",\"\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output \"" << stem << ".png\"\n"
       << "set xlabel \"users per macro cell\"\n"
       << "set ylabel \"" << ylabel << "\"\n"
       << "set key outside right\n"
       << "set grid\n"
       << "plot";
    std::string last;
    bool first = true;
    for (const auto& r : rs) {
        const auto id = series_id(r);
        if (id == last)
            continue;
        last = id;
        os << (first ? " " : ", \\\n     ") << '"' << stem << ".csv\" using 4:(strcol(1) eq \"" << id
           << "\" ? $5 : NaN) with linespoints title \"" << to_string(r.scheme)
           << " lambda_e=" << format_number(r.lambda_e) << '"';
        first = false;
    }
    os << '\n';
    return os.str();
}

std::vector<std::filesystem::path> emit_plot_data(const std::vector<MetricsRow>& rows,
                                                  const std::filesystem::path& dir)
{
    if (rows.empty())
        throw std::invalid_argument("no rows to plot");
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (auto fig : {Figure::Power, Figure::Throughput, Figure::EnergyEfficiency}) {
        const auto base = dir / std::string(file_stem(fig));
        write_file(base.string() + ".csv", plot_table(rows, fig));
        write_file(base.string() + ".gp", plot_script(rows, fig));
        written.emplace_back(base.string() + ".csv");
        written.emplace_back(base.string() + ".gp");
    }
    return written;
}

} // namespace hcn
