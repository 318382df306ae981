// SPDX-License-Identifier: Apache-2.0
//
// beamest: beam-domain channel estimation for spatially non-stationary massive MIMO
// Copyright (C) 2026 The beamest authors
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
// ------------------------------------------------------------------------


#include "beamest/harness.hpp"

#include "beamest/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace beamest
{
namespace
{

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

double parse_real(const std::string &key, const std::string &text, int line)
{
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf")
        return std::numeric_limits<double>::infinity();
    if (t == "-inf")
        return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char *first = t.data() + (t.starts_with('+') ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key, "expected a real number, got '" + t + "'", line);
    return v;
}

std::uint64_t parse_uint(const std::string &key, const std::string &text, int line)
{
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key, "expected a non-negative integer, got '" + t + "'", line);
    return v;
}

std::size_t parse_count(const std::string &key, const std::string &text, int line)
{
    return static_cast<std::size_t>(parse_uint(key, text, line));
}

std::string real_text(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Setter = std::function<void(ExperimentConfig &, const std::string &, int)>;

const std::map<std::string, Setter> &setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        t["pv"] = [](auto &c, const auto &v, int l) { c.geometry.pv = parse_count("pv", v, l); };
        t["ph"] = [](auto &c, const auto &v, int l) { c.geometry.ph = parse_count("ph", v, l); };
        t["element_spacing"] = [](auto &c, const auto &v, int l) {
            c.geometry.element_spacing = parse_real("element_spacing", v, l);
        };
        t["k"] = [](auto &c, const auto &v, int l) { c.k = parse_count("k", v, l); };
        t["rho"] = [](auto &c, const auto &v, int l) { c.channel.rho = parse_real("rho", v, l); };
        t["snr_db"] = [](auto &c, const auto &v, int l) {
            c.snr_grid_db.clear();
            for (const auto &item : split_list(v))
                c.snr_grid_db.push_back(parse_real("snr_db", item, l));
        };
        t["trials"] = [](auto &c, const auto &v, int l) { c.trials = parse_count("trials", v, l); };
        t["estimators"] = [](auto &c, const auto &v, int) { c.estimators = split_list(v); };
        t["seed"] = [](auto &c, const auto &v, int l) { c.seed = parse_uint("seed", v, l); };
        t["threads"] = [](auto &c, const auto &v, int l) { c.threads = parse_count("threads", v, l); };
        t["freeze_phi"] = [](auto &c, const auto &v, int l) {
            if (v == "true")
                c.freeze_phi = true;
            else if (v == "false")
                c.freeze_phi = false;
            else
                throw ConfigError("freeze_phi", "expected true or false, got '" + v + "'", l);
        };
        t["channel_model"] = [](auto &c, const auto &v, int l) {
            if (v == "clusters")
                c.channel_model = ChannelModel::clusters;
            else if (v == "single-path")
                c.channel_model = ChannelModel::single_path;
            else
                throw ConfigError("channel_model", "expected clusters or single-path, got '" + v + "'", l);
        };
        t["clusters"] = [](auto &c, const auto &v, int l) { c.channel.clusters = parse_count("clusters", v, l); };
        t["rays_per_cluster"] = [](auto &c, const auto &v, int l) {
            c.channel.rays_per_cluster = parse_count("rays_per_cluster", v, l);
        };
        t["carrier_freq"] = [](auto &c, const auto &v, int l) {
            c.channel.carrier_freq = parse_real("carrier_freq", v, l);
        };
        t["angular_spread"] = [](auto &c, const auto &v, int l) {
            c.channel.angular_spread = parse_real("angular_spread", v, l);
        };
        t["delay_spread"] = [](auto &c, const auto &v, int l) {
            c.channel.delay_spread = parse_real("delay_spread", v, l);
        };
        t["power_decay"] = [](auto &c, const auto &v, int l) {
            c.channel.power_decay = parse_real("power_decay", v, l);
        };
        t["vr_min_fraction"] = [](auto &c, const auto &v, int l) {
            c.channel.vr_min_fraction = parse_real("vr_min_fraction", v, l);
        };
        t["vr_max_fraction"] = [](auto &c, const auto &v, int l) {
            c.channel.vr_max_fraction = parse_real("vr_max_fraction", v, l);
        };
        t["mu"] = [](auto &c, const auto &v, int l) { c.mu = parse_real("mu", v, l); };
        t["initial_step"] = [](auto &c, const auto &v, int l) { c.initial_step = parse_count("initial_step", v, l); };
        t["max_support"] = [](auto &c, const auto &v, int l) {
            c.max_support = v == "auto" ? 0 : parse_count("max_support", v, l);
            if (v != "auto" && c.max_support == 0)
                throw ConfigError("max_support", "must be >= 1 or auto", l);
        };
        t["neighbor_rule"] = [](auto &c, const auto &v, int l) {
            if (v == "as-paper")
                c.neighbor_rule = NeighborRule::as_paper;
            else if (v == "inverted")
                c.neighbor_rule = NeighborRule::inverted;
            else
                throw ConfigError("neighbor_rule", "expected as-paper, inverted or disabled, got '" + v + "'", l);
        };
        t["oracle_energy_fraction"] = [](auto &c, const auto &v, int l) {
            c.oracle_energy_fraction = v == "auto" ? 0.0 : parse_real("oracle_energy_fraction", v, l);
            if (v != "auto" && !(c.oracle_energy_fraction > 0.0 && c.oracle_energy_fraction <= 1.0))
                throw ConfigError("oracle_energy_fraction", "must lie in (0, 1] or be auto", l);
        };
        t["asd_energy_fraction"] = [](auto &c, const auto &v, int l) {
            c.asd.energy_fraction = parse_real("asd_energy_fraction", v, l);
        };
        t["asd_window"] = [](auto &c, const auto &v, int l) { c.asd.window = parse_count("asd_window", v, l); };
        t["bomp_block_rows"] = [](auto &c, const auto &v, int l) {
            c.bomp_block.rows = parse_count("bomp_block_rows", v, l);
        };
        t["bomp_block_cols"] = [](auto &c, const auto &v, int l) {
            c.bomp_block.cols = parse_count("bomp_block_cols", v, l);
        };
        return t;
    }();
    return table;
}

void fail(const char *key, const std::string &what) { throw ConfigError(key, what); }

} // namespace

const std::vector<std::string> &estimator_names()
{
    static const std::vector<std::string> names{"oracle-ls", "bds-samp", "bds-samp-inv", "samp",
                                                "omp",       "bomp",     "asd"};
    return names;
}

bool is_registered_estimator(const std::string &name)
{
    const auto &n = estimator_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

void ExperimentConfig::validate() const
{
    if (geometry.pv < 1)
        fail("pv", "must be >= 1");
    if (geometry.ph < 1)
        fail("ph", "must be >= 1");
    if (!(geometry.element_spacing > 0.0) || !std::isfinite(geometry.element_spacing))
        fail("element_spacing", "must be finite and > 0");
    if (k < 1 || k > geometry.total())
        fail("k", "must satisfy 1 <= K <= P = " + std::to_string(geometry.total()));
    if (!(channel.rho >= 0.0 && channel.rho <= 1.0))
        fail("rho", "must lie in [0, 1]");
    if (snr_grid_db.empty())
        fail("snr_db", "needs at least one value");
    for (const auto s : snr_grid_db)
        if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
            fail("snr_db", "values must be finite or +inf");
    if (trials < 1)
        fail("trials", "must be >= 1");
    if (estimators.empty())
        fail("estimators", "needs at least one estimator");
    for (std::size_t i = 0; i < estimators.size(); ++i)
    {
        if (!is_registered_estimator(estimators[i]))
            fail("estimators", "unknown estimator '" + estimators[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (estimators[i] == estimators[j])
                fail("estimators", "estimator '" + estimators[i] + "' listed twice");
    }
    if (channel.clusters < 1)
        fail("clusters", "must be >= 1");
    if (channel.rays_per_cluster < 1)
        fail("rays_per_cluster", "must be >= 1");
    if (!(channel.carrier_freq > 0.0) || !std::isfinite(channel.carrier_freq))
        fail("carrier_freq", "must be finite and > 0");
    if (!(channel.angular_spread >= 0.0) || !std::isfinite(channel.angular_spread))
        fail("angular_spread", "must be finite and >= 0");
    if (!(channel.delay_spread > 0.0) || !std::isfinite(channel.delay_spread))
        fail("delay_spread", "must be finite and > 0");
    if (!(channel.power_decay > 1.0) || !std::isfinite(channel.power_decay))
        fail("power_decay", "must be finite and > 1");
    if (!(channel.vr_min_fraction > 0.0 && channel.vr_min_fraction <= 1.0))
        fail("vr_min_fraction", "must lie in (0, 1]");
    if (!(channel.vr_max_fraction >= channel.vr_min_fraction && channel.vr_max_fraction <= 1.0))
        fail("vr_max_fraction", "must lie in [vr_min_fraction, 1]");
    if (!(mu > 0.0 && mu <= 1.0))
        fail("mu", "must lie in (0, 1]");
    if (initial_step < 1)
        fail("initial_step", "must be >= 1");
    if (max_support > k)
        fail("max_support", "must not exceed K = " + std::to_string(k));
    if (initial_step > effective_max_support())
        fail("initial_step", "exceeds max_support");
    if (!(oracle_energy_fraction >= 0.0 && oracle_energy_fraction <= 1.0))
        fail("oracle_energy_fraction", "must lie in (0, 1] or be auto");
    if (!(asd.energy_fraction > 0.0 && asd.energy_fraction <= 1.0))
        fail("asd_energy_fraction", "must lie in (0, 1]");
    if (bomp_block.rows < 1 || geometry.pv % bomp_block.rows != 0)
        fail("bomp_block_rows", "must divide pv");
    if (bomp_block.cols < 1 || geometry.ph % bomp_block.cols != 0)
        fail("bomp_block_cols", "must divide ph");
}

ExperimentConfig parse_config_text(const std::string &text)
{
    ExperimentConfig cfg;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw))
    {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(std::string_view(raw).substr(0, hash));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(body, "expected 'key = value'", line);
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty())
            throw ConfigError("", "missing key before '='", line);
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError(key, "unknown key", line);
        if (!seen.emplace(key, line).second)
            throw ConfigError(key, "duplicate key (first set on line " + std::to_string(seen[key]) + ")", line);
        it->second(cfg, value, line);
    }
    try
    {
        cfg.validate();
    }
    catch (const ConfigError &e)
    {
        const auto it = seen.find(e.key());
        if (it == seen.end())
            throw;
        // Re-raise with the line that set the offending key.
        const std::string msg = e.what();
        const auto colon = msg.find(": ");
        throw ConfigError(e.key(), colon == std::string::npos ? msg : msg.substr(colon + 2), it->second);
    }
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string format_config(const ExperimentConfig &c)
{
    std::ostringstream o;
    const auto join = [](const auto &items, auto fmt) {
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i)
            s += (i ? ", " : "") + fmt(items[i]);
        return s;
    };
    o << "pv = " << c.geometry.pv << "\n"
      << "ph = " << c.geometry.ph << "\n"
      << "element_spacing = " << real_text(c.geometry.element_spacing) << "\n"
      << "k = " << c.k << "\n"
      << "rho = " << real_text(c.channel.rho) << "\n"
      << "snr_db = " << join(c.snr_grid_db, real_text) << "\n"
      << "trials = " << c.trials << "\n"
      << "estimators = " << join(c.estimators, [](const std::string &s) { return s; }) << "\n"
      << "seed = " << c.seed << "\n"
      << "threads = " << c.threads << "\n"
      << "freeze_phi = " << (c.freeze_phi ? "true" : "false") << "\n"
      << "channel_model = " << (c.channel_model == ChannelModel::clusters ? "clusters" : "single-path") << "\n"
      << "clusters = " << c.channel.clusters << "\n"
      << "rays_per_cluster = " << c.channel.rays_per_cluster << "\n"
      << "carrier_freq = " << real_text(c.channel.carrier_freq) << "\n"
      << "angular_spread = " << real_text(c.channel.angular_spread) << "\n"
      << "delay_spread = " << real_text(c.channel.delay_spread) << "\n"
      << "power_decay = " << real_text(c.channel.power_decay) << "\n"
      << "vr_min_fraction = " << real_text(c.channel.vr_min_fraction) << "\n"
      << "vr_max_fraction = " << real_text(c.channel.vr_max_fraction) << "\n"
      << "mu = " << real_text(c.mu) << "\n"
      << "initial_step = " << c.initial_step << "\n"
      << "max_support = " << (c.max_support == 0 ? std::string("auto") : std::to_string(c.max_support)) << "\n"
      << "neighbor_rule = " << to_string(c.neighbor_rule) << "\n"
      << "oracle_energy_fraction = "
      << (c.oracle_energy_fraction == 0.0 ? std::string("auto") : real_text(c.oracle_energy_fraction)) << "\n"
      << "asd_energy_fraction = " << real_text(c.asd.energy_fraction) << "\n"
      << "asd_window = " << c.asd.window << "\n"
      << "bomp_block_rows = " << c.bomp_block.rows << "\n"
      << "bomp_block_cols = " << c.bomp_block.cols << "\n";
    return o.str();
}

} // namespace beamest
