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

#include "hcn/format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hcn {

namespace {

// ---- lexer ---------------------------------------------------------------

struct Value {
    enum class Kind { Integer, Float, Bool, String, Array } kind = Kind::Integer;
    std::string text; // digits for Integer, contents for String
    double number = 0.0;
    bool flag = false;
    std::vector<Value> items;
};

class LineParser {
public:
    LineParser(std::string_view s, int line) : s_(s), line_(line) {}

    Value value()
    {
        skip_ws();
        if (eof())
            fail("missing value");
        const char c = s_[pos_];
        if (c == '"')
            return string();
        if (c == '[')
            return array();
        return scalar();
    }

    void expect_end()
    {
        skip_ws();
        if (!eof())
            fail("unexpected trailing text '" + std::string(s_.substr(pos_)) + "'");
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ConfigError("line " + std::to_string(line_), what);
    }

private:
    bool eof() const { return pos_ >= s_.size(); }

    void skip_ws()
    {
        while (!eof() && (s_[pos_] == ' ' || s_[pos_] == '\t'))
            ++pos_;
    }

    Value string()
    {
        Value v;
        v.kind = Value::Kind::String;
        ++pos_;
        while (!eof() && s_[pos_] != '"') {
            char c = s_[pos_++];
            if (c == '\\') {
                if (eof())
                    break;
                c = s_[pos_++];
                switch (c) {
                case 'n': c = '\n'; break;
                case 't': c = '\t'; break;
                case '"': case '\\': break;
                default: fail(std::string("unsupported escape \\") + c);
                }
            }
            v.text.push_back(c);
        }
        if (eof())
            fail("unterminated string");
        ++pos_;
        return v;
    }

    Value array()
    {
        Value v;
        v.kind = Value::Kind::Array;
        ++pos_;
        for (;;) {
            skip_ws();
            if (eof())
                fail("unterminated array");
            if (s_[pos_] == ']') {
                ++pos_;
                return v;
            }
            v.items.push_back(value());
            skip_ws();
            if (!eof() && s_[pos_] == ',')
                ++pos_;
            else if (eof() || s_[pos_] != ']')
                fail("expected ',' or ']' in array");
        }
    }

    Value scalar()
    {
        const auto start = pos_;
        while (!eof() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != ' ' && s_[pos_] != '\t')
            ++pos_;
        std::string tok(s_.substr(start, pos_ - start));
        Value v;
        if (tok == "true" || tok == "false") {
            v.kind = Value::Kind::Bool;
            v.flag = tok == "true";
            return v;
        }
        std::erase(tok, '_');
        if (tok.empty())
            fail("missing value");
        const bool integral = tok.find_first_of(".eEin") == std::string::npos;
        if (integral) {
            v.kind = Value::Kind::Integer;
            v.text = tok;
        } else {
            v.kind = Value::Kind::Float;
        }
        const char* first = tok.data() + (tok.front() == '+' ? 1 : 0);
        const auto res = std::from_chars(first, tok.data() + tok.size(), v.number);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            fail("cannot parse value '" + tok + "'");
        return v;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_;
};

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view s)
{
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\'))
            quoted = !quoted;
        else if (s[i] == '#' && !quoted)
            return s.substr(0, i);
    }
    return s;
}

bool valid_key(std::string_view k)
{
    return !k.empty() && std::all_of(k.begin(), k.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '-' || c == '.';
    });
}

std::vector<std::pair<std::string, Value>> tokenize(std::string_view text)
{
    std::vector<std::pair<std::string, Value>> out;
    std::set<std::string> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        const auto line = trim(strip_comment(text.substr(pos, nl - pos)));
        pos = nl + 1;
        ++line_no;
        if (line.empty())
            continue;

        LineParser lp(line, line_no);
        if (line.front() == '[') {
            if (line.back() != ']')
                lp.fail("malformed table header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!valid_key(section))
                lp.fail("malformed table name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            lp.fail("expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (!valid_key(key))
            lp.fail("malformed key");
        const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (!seen.insert(full).second)
            throw ConfigError(full, "defined more than once");

        LineParser vp(line.substr(eq + 1), line_no);
        Value v = vp.value();
        vp.expect_end();
        out.emplace_back(full, std::move(v));
    }
    return out;
}

// ---- typed accessors -----------------------------------------------------

double as_double(const std::string& key, const Value& v)
{
    if (v.kind != Value::Kind::Integer && v.kind != Value::Kind::Float)
        throw ConfigError(key, "expected a number");
    return v.number;
}

template <class Int>
Int as_integer(const std::string& key, const Value& v)
{
    if (v.kind != Value::Kind::Integer)
        throw ConfigError(key, "expected an integer");
    Int out{};
    const char* first = v.text.data() + (v.text.front() == '+' ? 1 : 0);
    const auto res = std::from_chars(first, v.text.data() + v.text.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.text.data() + v.text.size())
        throw ConfigError(key, "integer '" + v.text + "' out of range");
    return out;
}

bool as_bool(const std::string& key, const Value& v)
{
    if (v.kind != Value::Kind::Bool)
        throw ConfigError(key, "expected true or false");
    return v.flag;
}

const std::string& as_string(const std::string& key, const Value& v)
{
    if (v.kind != Value::Kind::String)
        throw ConfigError(key, "expected a quoted string");
    return v.text;
}

const std::vector<Value>& as_array(const std::string& key, const Value& v)
{
    if (v.kind != Value::Kind::Array)
        throw ConfigError(key, "expected an array");
    return v.items;
}

std::vector<double> as_doubles(const std::string& key, const Value& v)
{
    std::vector<double> out;
    for (const auto& item : as_array(key, v))
        out.push_back(as_double(key, item));
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const Value&)>;

void add_power_keys(std::map<std::string, Setter>& t, const std::string& prefix, PowerModel ModelConfig::*member)
{
    auto field = [member](RunConfig& c) -> PowerModel& { return c.model.*member; };
    t[prefix + "p_const"] = [=](RunConfig& c, auto& k, auto& v) { field(c).p_const = as_double(k, v); };
    t[prefix + "beta"] = [=](RunConfig& c, auto& k, auto& v) { field(c).beta = as_double(k, v); };
    t[prefix + "p_tx"] = [=](RunConfig& c, auto& k, auto& v) { field(c).p_tx_nominal = as_double(k, v); };
    t[prefix + "p_tx_min"] = [=](RunConfig& c, auto& k, auto& v) { field(c).p_tx_min = as_double(k, v); };
    t[prefix + "p_tx_max"] = [=](RunConfig& c, auto& k, auto& v) { field(c).p_tx_max = as_double(k, v); };
    t[prefix + "bandwidth"] = [=](RunConfig& c, auto& k, auto& v) { field(c).total_bandwidth = as_double(k, v); };
    t[prefix + "subcarriers"] = [=](RunConfig& c, auto& k, auto& v) { field(c).n_subcarriers = as_integer<int>(k, v); };
    t[prefix + "sleep_power"] = [=](RunConfig& c, auto& k, auto& v) { field(c).sleep_power = as_double(k, v); };
}

const std::map<std::string, Setter>& setters()
{
    static const auto table = [] {
        std::map<std::string, Setter> t;
        t["layout.placement"] = [](RunConfig& c, auto& k, auto& v) {
            const auto& s = as_string(k, v);
            if (s == "rings")
                c.model.layout.placement = Placement::Rings;
            else if (s == "uniform")
                c.model.layout.placement = Placement::Uniform;
            else
                throw ConfigError(k, "expected \"rings\" or \"uniform\"");
        };
        t["layout.placement_seed"] = [](RunConfig& c, auto& k, auto& v) {
            c.model.layout.placement_seed = as_integer<std::uint64_t>(k, v);
        };
        t["layout.macro_radius"] = [](RunConfig& c, auto& k, auto& v) { c.model.layout.macro_radius = as_double(k, v); };
        t["layout.sbs_radius"] = [](RunConfig& c, auto& k, auto& v) { c.model.layout.sbs_radius = as_double(k, v); };
        t["layout.n_csbs"] = [](RunConfig& c, auto& k, auto& v) { c.model.layout.n_csbs = as_integer<int>(k, v); };
        t["layout.n_rsbs"] = [](RunConfig& c, auto& k, auto& v) { c.model.layout.n_rsbs = as_integer<int>(k, v); };
        t["layout.n_hsbs"] = [](RunConfig& c, auto& k, auto& v) { c.model.layout.n_hsbs = as_integer<int>(k, v); };
        t["layout.min_separation"] = [](RunConfig& c, auto& k, auto& v) {
            c.model.layout.min_separation = as_double(k, v);
        };

        add_power_keys(t, "power.mbs.", &ModelConfig::macro);
        add_power_keys(t, "power.sbs.", &ModelConfig::small_cell);

        t["channel.path_loss_exponent"] = [](RunConfig& c, auto& k, auto& v) {
            c.model.channel.path_loss_exponent = as_double(k, v);
        };
        t["channel.fading"] = [](RunConfig& c, auto& k, auto& v) {
            const auto& s = as_string(k, v);
            if (s != "rayleigh" && s != "none")
                throw ConfigError(k, "expected \"rayleigh\" or \"none\"");
            c.model.channel.deterministic_fading = s == "none";
        };

        t["algorithm.u_min"] = [](RunConfig& c, auto& k, auto& v) { c.model.algo.u_min = as_integer<int>(k, v); };
        t["algorithm.n_th"] = [](RunConfig& c, auto& k, auto& v) { c.model.algo.n_th = as_integer<int>(k, v); };
        t["algorithm.margin"] = [](RunConfig& c, auto& k, auto& v) { c.model.algo.margin = as_double(k, v); };
        t["algorithm.step"] = [](RunConfig& c, auto& k, auto& v) { c.model.algo.step = as_double(k, v); };
        t["algorithm.max_iter"] = [](RunConfig& c, auto& k, auto& v) { c.model.algo.max_iter = as_integer<int>(k, v); };
        t["algorithm.subcarriers_per_user"] = [](RunConfig& c, auto& k, auto& v) {
            c.model.algo.subcarriers_per_user = as_integer<int>(k, v);
        };
        t["algorithm.rf_only_ledger"] = [](RunConfig& c, auto& k, auto& v) {
            c.model.algo.rf_only_ledger = as_bool(k, v);
        };

        t["sweep.schemes"] = [](RunConfig& c, auto& k, auto& v) {
            c.sweep.schemes.clear();
            for (const auto& item : as_array(k, v)) {
                const auto s = parse_scheme(as_string(k, item));
                if (!s)
                    throw ConfigError(k, "unknown scheme \"" + item.text + "\"");
                c.sweep.schemes.push_back(*s);
            }
        };
        t["sweep.densities"] = [](RunConfig& c, auto& k, auto& v) { c.sweep.densities = as_doubles(k, v); };
        t["sweep.lambda_e"] = [](RunConfig& c, auto& k, auto& v) { c.sweep.lambda_e = as_doubles(k, v); };
        t["sweep.samples"] = [](RunConfig& c, auto& k, auto& v) { c.sweep.samples = as_integer<int>(k, v); };
        t["sweep.seed"] = [](RunConfig& c, auto& k, auto& v) { c.sweep.seed = as_integer<std::uint64_t>(k, v); };
        t["sweep.ee_estimator"] = [](RunConfig& c, auto& k, auto& v) {
            const auto& s = as_string(k, v);
            if (s == to_string(EeEstimator::RatioOfMeans))
                c.sweep.ee_estimator = EeEstimator::RatioOfMeans;
            else if (s == to_string(EeEstimator::MeanOfRatios))
                c.sweep.ee_estimator = EeEstimator::MeanOfRatios;
            else
                throw ConfigError(k, "expected \"ratio_of_means\" or \"mean_of_ratios\"");
        };

        t["output.directory"] = [](RunConfig& c, auto& k, auto& v) { c.output.directory = as_string(k, v); };
        t["output.plot_data"] = [](RunConfig& c, auto& k, auto& v) { c.output.plot_data = as_bool(k, v); };
        return t;
    }();
    return table;
}

// ---- validation ----------------------------------------------------------

void require(bool ok, const std::string& field, const std::string& message)
{
    if (!ok)
        throw ConfigError(field, message);
}

void validate_power(const PowerModel& m, const std::string& p)
{
    require(m.p_const >= 0.0, p + "p_const", "must be >= 0");
    require(m.beta >= 0.0, p + "beta", "must be >= 0");
    require(m.p_tx_min > 0.0, p + "p_tx_min", "must be > 0");
    require(m.p_tx_max >= m.p_tx_min, p + "p_tx_max", "must be >= p_tx_min");
    require(m.p_tx_nominal >= m.p_tx_min && m.p_tx_nominal <= m.p_tx_max, p + "p_tx",
            "must lie in [p_tx_min, p_tx_max]");
    require(m.total_bandwidth > 0.0 && std::isfinite(m.total_bandwidth), p + "bandwidth", "must be > 0");
    require(m.n_subcarriers > 0, p + "subcarriers", "must be > 0");
    require(m.sleep_power >= 0.0, p + "sleep_power", "must be >= 0");
}

std::string quoted(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out + "\"";
}

std::string number_list(const std::vector<double>& xs)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? ", " : "") + format_number(xs[i]);
    return out + "]";
}

void write_power(std::ostringstream& os, const std::string& table, const PowerModel& m)
{
    os << "\n[" << table << "]\n"
       << "p_const = " << format_number(m.p_const) << "\n"
       << "beta = " << format_number(m.beta) << "\n"
       << "p_tx = " << format_number(m.p_tx_nominal) << "\n"
       << "p_tx_min = " << format_number(m.p_tx_min) << "\n"
       << "p_tx_max = " << format_number(m.p_tx_max) << "\n"
       << "bandwidth = " << format_number(m.total_bandwidth) << "\n"
       << "subcarriers = " << m.n_subcarriers << "\n"
       << "sleep_power = " << format_number(m.sleep_power) << "\n";
}

} // namespace

std::string_view to_string(EeEstimator estimator)
{
    return estimator == EeEstimator::RatioOfMeans ? "ratio_of_means" : "mean_of_ratios";
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    const auto& table = setters();
    for (const auto& [key, value] : tokenize(text)) {
        const auto it = table.find(key);
        if (it == table.end())
            throw ConfigError(key, "unknown key");
        it->second(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& cfg)
{
    const auto& l = cfg.model.layout;
    require(l.macro_radius > 0.0 && std::isfinite(l.macro_radius), "layout.macro_radius", "must be > 0");
    require(l.sbs_radius > 0.0 && std::isfinite(l.sbs_radius), "layout.sbs_radius", "must be > 0");
    require(l.n_csbs >= 0, "layout.n_csbs", "must be >= 0");
    require(l.n_rsbs >= 0, "layout.n_rsbs", "must be >= 0");
    require(l.n_hsbs >= 0, "layout.n_hsbs", "must be >= 0");
    require(l.min_separation >= 0.0, "layout.min_separation", "must be >= 0");

    validate_power(cfg.model.macro, "power.mbs.");
    validate_power(cfg.model.small_cell, "power.sbs.");

    const double alpha = cfg.model.channel.path_loss_exponent;
    require(alpha > 0.0 && std::isfinite(alpha), "channel.path_loss_exponent", "must be > 0");

    const auto& a = cfg.model.algo;
    require(a.u_min >= 0, "algorithm.u_min", "must be >= 0");
    require(a.n_th >= 0, "algorithm.n_th", "must be >= 0");
    require(a.margin > 0.0, "algorithm.margin", "must be > 0");
    require(a.step > 0.0 && a.step < 1.0, "algorithm.step", "must lie in (0, 1)");
    require(a.max_iter >= 1, "algorithm.max_iter", "must be >= 1");
    require(a.subcarriers_per_user >= 1, "algorithm.subcarriers_per_user", "must be >= 1");
    require(a.subcarriers_per_user <= cfg.model.small_cell.n_subcarriers &&
                a.subcarriers_per_user <= cfg.model.macro.n_subcarriers,
            "algorithm.subcarriers_per_user", "exceeds a station's sub-carrier count");

    const auto& s = cfg.sweep;
    require(!s.schemes.empty(), "sweep.schemes", "must not be empty");
    for (std::size_t i = 0; i < s.schemes.size(); ++i)
        for (std::size_t j = i + 1; j < s.schemes.size(); ++j)
            require(s.schemes[i] != s.schemes[j], "sweep.schemes", "contains duplicates");
    require(!s.densities.empty(), "sweep.densities", "must not be empty");
    for (double d : s.densities)
        require(d >= 0.0 && d <= 1e6, "sweep.densities", "entries must lie in [0, 1e6]");
    require(!s.lambda_e.empty(), "sweep.lambda_e", "must not be empty");
    for (double x : s.lambda_e)
        require(x >= 0.0 && x <= 700.0, "sweep.lambda_e", "entries must lie in [0, 700]");
    require(s.samples >= 1, "sweep.samples", "must be >= 1");

    require(!cfg.output.directory.empty(), "output.directory", "must not be empty");
}

std::string to_toml(const RunConfig& cfg)
{
    std::ostringstream os;
    const auto& l = cfg.model.layout;
    os << "# effective configuration\n"
       << "\n[layout]\n"
       << "placement = " << (l.placement == Placement::Rings ? "\"rings\"" : "\"uniform\"") << "\n"
       << "placement_seed = " << l.placement_seed << "\n"
       << "macro_radius = " << format_number(l.macro_radius) << "\n"
       << "sbs_radius = " << format_number(l.sbs_radius) << "\n"
       << "n_csbs = " << l.n_csbs << "\n"
       << "n_rsbs = " << l.n_rsbs << "\n"
       << "n_hsbs = " << l.n_hsbs << "\n"
       << "min_separation = " << format_number(l.min_separation) << "\n";

    write_power(os, "power.mbs", cfg.model.macro);
    write_power(os, "power.sbs", cfg.model.small_cell);

    os << "\n[channel]\n"
       << "path_loss_exponent = " << format_number(cfg.model.channel.path_loss_exponent) << "\n"
       << "fading = " << (cfg.model.channel.deterministic_fading ? "\"none\"" : "\"rayleigh\"") << "\n";

    const auto& a = cfg.model.algo;
    os << "\n[algorithm]\n"
       << "u_min = " << a.u_min << "\n"
       << "n_th = " << a.n_th << "\n"
       << "margin = " << format_number(a.margin) << "\n"
       << "step = " << format_number(a.step) << "\n"
       << "max_iter = " << a.max_iter << "\n"
       << "subcarriers_per_user = " << a.subcarriers_per_user << "\n"
       << "rf_only_ledger = " << (a.rf_only_ledger ? "true" : "false") << "\n";

    const auto& s = cfg.sweep;
    os << "\n[sweep]\n"
       << "schemes = [";
    for (std::size_t i = 0; i < s.schemes.size(); ++i)
        os << (i ? ", " : "") << quoted(to_string(s.schemes[i]));
    os << "]\n"
       << "densities = " << number_list(s.densities) << "\n"
       << "lambda_e = " << number_list(s.lambda_e) << "\n"
       << "samples = " << s.samples << "\n"
       << "seed = " << s.seed << "\n"
       << "ee_estimator = " << quoted(to_string(s.ee_estimator)) << "\n";

    os << "\n[output]\n"
       << "directory = " << quoted(cfg.output.directory) << "\n"
       << "plot_data = " << (cfg.output.plot_data ? "true" : "false") << "\n";
    return os.str();
}

} // namespace hcn
