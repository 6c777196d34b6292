// SPDX-License-Identifier: Apache-2.0
//
// domino: hardware distortion compensation for WiFi channel sounding
// Copyright (C) 2026 the domino authors
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

#include "domino/config.hpp"

#include "domino/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace domino
{

namespace
{

std::string trim(const std::string &s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string &key, int line, const std::string &value,
                            const char *expected)
{
    throw ConfigError("config line " + std::to_string(line) + ": key '" + key + "' expects " +
                      expected + ", got '" + value + "'");
}

double parse_double_token(const std::string &token)
{
    const std::string t = trim(token);
    double v = 0.0;
    const auto *first = t.data();
    const auto *last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ConfigError("'" + t + "' is not a number");
    return v;
}

int parse_int_token(const std::string &token)
{
    const std::string t = trim(token);
    int v = 0;
    const auto *first = t.data();
    const auto *last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ConfigError("'" + t + "' is not an integer");
    return v;
}

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, sep))
        out.push_back(token);
    return out;
}

} // namespace

KeyValues KeyValues::parse(const std::string &text)
{
    KeyValues kv;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw))
    {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty())
            continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line) + ": empty key");
        if (kv.entries_.count(key))
            throw ConfigError("config line " + std::to_string(line) + ": duplicate key '" + key +
                              "'");
        kv.entries_[key] = Entry{value, line, false};
    }
    return kv;
}

bool KeyValues::has(const std::string &key) const
{
    return entries_.count(key) != 0;
}

std::string KeyValues::get_string(const std::string &key, const std::string &fallback)
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    it->second.used = true;
    return it->second.value;
}

double KeyValues::get_double(const std::string &key, double fallback, bool allow_inf)
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    it->second.used = true;
    const std::string &v = it->second.value;
    if (allow_inf && v == "inf")
        return std::numeric_limits<double>::infinity();
    try
    {
        const double parsed = parse_double_token(v);
        if (!std::isfinite(parsed))
            throw ConfigError("non-finite");
        return parsed;
    }
    catch (const ConfigError &)
    {
        bad_value(key, it->second.line, v, allow_inf ? "a number or inf" : "a number");
    }
}

int KeyValues::get_int(const std::string &key, int fallback)
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    it->second.used = true;
    try
    {
        return parse_int_token(it->second.value);
    }
    catch (const ConfigError &)
    {
        bad_value(key, it->second.line, it->second.value, "an integer");
    }
}

std::uint64_t KeyValues::get_u64(const std::string &key, std::uint64_t fallback)
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    it->second.used = true;
    const std::string t = trim(it->second.value);
    std::uint64_t v = 0;
    const auto *first = t.data();
    const auto *last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        bad_value(key, it->second.line, t, "an unsigned integer");
    return v;
}

bool KeyValues::get_bool(const std::string &key, bool fallback)
{
    const auto it = entries_.find(key);
    if (it == entries_.end())
        return fallback;
    it->second.used = true;
    const std::string &v = it->second.value;
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    bad_value(key, it->second.line, v, "a boolean (true/false)");
}

int KeyValues::line_of(const std::string &key) const
{
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

void KeyValues::finish() const
{
    for (const auto &[key, entry] : entries_)
        if (!entry.used)
            throw ConfigError("config line " + std::to_string(entry.line) + ": unknown key '" +
                              key + "'");
}

std::vector<int> parse_index_ranges(const std::string &text)
{
    std::vector<int> out;
    for (const std::string &token : split(text, ','))
    {
        const std::string t = trim(token);
        if (t.empty())
            throw ConfigError("empty entry in index list");
        const auto colon = t.find(':');
        if (colon == std::string::npos)
        {
            out.push_back(parse_int_token(t));
            continue;
        }
        const int lo = parse_int_token(t.substr(0, colon));
        const int hi = parse_int_token(t.substr(colon + 1));
        if (hi < lo)
            throw ConfigError("descending index range '" + t + "'");
        for (int k = lo; k <= hi; ++k)
            out.push_back(k);
    }
    if (out.empty())
        throw ConfigError("empty index list");
    return out;
}

std::vector<double> parse_double_list(const std::string &text)
{
    std::vector<double> out;
    if (trim(text).empty())
        throw ConfigError("empty number list");
    for (const std::string &token : split(text, ','))
    {
        if (trim(token) == "inf")
            out.push_back(std::numeric_limits<double>::infinity());
        else
            out.push_back(parse_double_token(token));
    }
    return out;
}

namespace
{

[[noreturn]] void semantic_error(const KeyValues &kv, const std::string &key, const std::string &msg)
{
    const int line = kv.line_of(key);
    if (line > 0)
        throw ConfigError("config line " + std::to_string(line) + ": " + key + ": " + msg);
    throw ConfigError("config: " + key + ": " + msg);
}

void check(bool ok, const KeyValues &kv, const std::string &key, const std::string &msg)
{
    if (!ok)
        semantic_error(kv, key, msg);
}

} // namespace

RunConfig RunConfig::from_text(const std::string &text)
{
    KeyValues kv = KeyValues::parse(text);
    RunConfig cfg;

    cfg.n_fft = kv.get_int("layout.n_fft", cfg.n_fft);
    cfg.delta_f_hz = kv.get_double("layout.delta_f_hz", cfg.delta_f_hz);
    cfg.active_spec = kv.get_string("layout.active", cfg.active_spec);
    cfg.carrier_hz = kv.get_double("carrier_hz", cfg.carrier_hz);

    cfg.l_max = kv.get_int("tapset.l_max", cfg.l_max);
    cfg.ridge_spec = kv.get_string("ls.ridge", cfg.ridge_spec);

    cfg.search.tol_taps = kv.get_double("search.tol_taps", cfg.search.tol_taps);
    cfg.search.search_radius = kv.get_int("search.radius", cfg.search.search_radius);
    cfg.search.noise_floor_rel = kv.get_double("search.noise_floor_rel", cfg.search.noise_floor_rel);
    cfg.search.noise_floor_abs = kv.get_double("search.noise_floor_abs", cfg.search.noise_floor_abs);

    cfg.beta_min = kv.get_double("distortion.beta_min", cfg.beta_min);
    cfg.beta_max = kv.get_double("distortion.beta_max", cfg.beta_max);
    cfg.theta_min = kv.get_double("distortion.theta_min", cfg.theta_min);
    cfg.theta_max = kv.get_double("distortion.theta_max", cfg.theta_max);
    cfg.epsilon_min_ts = kv.get_double("distortion.epsilon_min_ts", cfg.epsilon_min_ts);
    cfg.epsilon_max_ts = kv.get_double("distortion.epsilon_max_ts", cfg.epsilon_max_ts);

    cfg.target_path = static_cast<std::size_t>(kv.get_int("motion.target_path", static_cast<int>(cfg.target_path)));
    cfg.delay_amplitude_ns = kv.get_double("motion.delay_amplitude_ns", cfg.delay_amplitude_ns);
    cfg.gain_amplitude = kv.get_double("motion.gain_amplitude", cfg.gain_amplitude);
    cfg.rate_bpm = kv.get_double("motion.rate_bpm", cfg.rate_bpm);
    cfg.phase_rad = kv.get_double("motion.phase_rad", cfg.phase_rad);

    cfg.fs_hz = kv.get_double("trace.fs_hz", cfg.fs_hz);
    cfg.duration_s = kv.get_double("trace.duration_s", cfg.duration_s);
    cfg.snr_db = kv.get_double("trace.snr_db", cfg.snr_db, /*allow_inf=*/true);
    cfg.n_antennas = kv.get_int("trace.n_antennas", cfg.n_antennas);
    cfg.shared_draws = kv.get_bool("trace.shared_draws", cfg.shared_draws);

    cfg.channel_paths = kv.get_string("channel.paths", cfg.channel_paths);

    cfg.band.lo_hz = kv.get_double("band.lo_hz", cfg.band.lo_hz);
    cfg.band.hi_hz = kv.get_double("band.hi_hz", cfg.band.hi_hz);

    cfg.seed = kv.get_u64("seed", cfg.seed);

    const std::string rates = kv.get_string("bench.rates_bpm", "");
    const std::string snrs = kv.get_string("bench.snrs_db", "");
    cfg.bench.reps = kv.get_int("bench.reps", cfg.bench.reps);
    cfg.bench.max_domino_mean_bpm =
        kv.get_double("bench.max_domino_mean_bpm", cfg.bench.max_domino_mean_bpm);

    kv.finish();

    check(cfg.n_fft >= 8, kv, "layout.n_fft", "must be at least 8");
    check(cfg.delta_f_hz > 0.0, kv, "layout.delta_f_hz", "must be positive");
    check(cfg.carrier_hz > 0.0, kv, "carrier_hz", "must be positive");
    check(cfg.search.tol_taps > 0.0, kv, "search.tol_taps", "must be positive");
    check(cfg.search.search_radius >= 0, kv, "search.radius", "must be non-negative");
    check(cfg.search.noise_floor_rel >= 0.0, kv, "search.noise_floor_rel", "must be non-negative");
    check(cfg.search.noise_floor_abs >= 0.0, kv, "search.noise_floor_abs", "must be non-negative");
    check(cfg.beta_min > 0.0, kv, "distortion.beta_min", "must be positive");
    check(cfg.beta_max >= cfg.beta_min, kv, "distortion.beta_max", "must be >= beta_min");
    check(cfg.theta_max >= cfg.theta_min, kv, "distortion.theta_max", "must be >= theta_min");
    check(cfg.epsilon_max_ts >= cfg.epsilon_min_ts, kv, "distortion.epsilon_max_ts",
          "must be >= epsilon_min_ts");
    check(std::max(std::abs(cfg.epsilon_min_ts), std::abs(cfg.epsilon_max_ts)) <
              static_cast<double>(cfg.n_fft) / 4.0,
          kv, "distortion.epsilon_max_ts", "|epsilon| must stay below n_fft/4 taps");
    check(cfg.delay_amplitude_ns >= 0.0, kv, "motion.delay_amplitude_ns", "must be non-negative");
    check(cfg.gain_amplitude >= 0.0 && cfg.gain_amplitude < 1.0, kv, "motion.gain_amplitude",
          "must lie in [0, 1)");
    check(cfg.rate_bpm > 0.0 && cfg.rate_bpm < 60.0, kv, "motion.rate_bpm",
          "must lie in (0, 60)");
    check(cfg.fs_hz > 0.0, kv, "trace.fs_hz", "must be positive");
    check(cfg.duration_s > 0.0, kv, "trace.duration_s", "must be positive");
    check(cfg.snr_db == std::numeric_limits<double>::infinity() || std::isfinite(cfg.snr_db), kv,
          "trace.snr_db", "must be finite or inf");
    check(cfg.n_antennas == 1 || cfg.n_antennas == 2, kv, "trace.n_antennas", "must be 1 or 2");
    check(cfg.band.lo_hz > 0.0 && cfg.band.hi_hz > cfg.band.lo_hz, kv, "band.lo_hz",
          "band must satisfy 0 < lo < hi");
    check(cfg.bench.reps >= 1, kv, "bench.reps", "must be at least 1");
    check(cfg.bench.max_domino_mean_bpm > 0.0, kv, "bench.max_domino_mean_bpm",
          "must be positive");

    try
    {
        if (!rates.empty() || kv.has("bench.rates_bpm"))
            cfg.bench.rates_bpm = parse_double_list(rates);
    }
    catch (const ConfigError &e)
    {
        semantic_error(kv, "bench.rates_bpm", e.what());
    }
    try
    {
        if (!snrs.empty() || kv.has("bench.snrs_db"))
            cfg.bench.snrs_db = parse_double_list(snrs);
    }
    catch (const ConfigError &e)
    {
        semantic_error(kv, "bench.snrs_db", e.what());
    }
    for (double r : cfg.bench.rates_bpm)
        check(r > 0.0 && r < 60.0, kv, "bench.rates_bpm", "rates must lie in (0, 60) bpm");

    std::shared_ptr<const SubcarrierLayout> layout;
    try
    {
        layout = cfg.make_layout();
    }
    catch (const Error &e)
    {
        semantic_error(kv, "layout.active", e.what());
    }
    check(cfg.l_max >= 1 && static_cast<std::size_t>(cfg.l_max) <= layout->active.size(), kv,
          "tapset.l_max", "must lie in [1, number of active subcarriers]");
    if (cfg.ridge_spec != "auto")
    {
        try
        {
            check(parse_double_token(cfg.ridge_spec) >= 0.0, kv, "ls.ridge",
                  "must be non-negative");
        }
        catch (const ConfigError &)
        {
            semantic_error(kv, "ls.ridge", "expects a non-negative number or auto");
        }
    }
    try
    {
        cfg.make_channel(layout).validate();
    }
    catch (const Error &e)
    {
        semantic_error(kv, "channel.paths", e.what());
    }
    try
    {
        cfg.validate_scenario();
    }
    catch (const Error &e)
    {
        semantic_error(kv, "motion.target_path", e.what());
    }

    return cfg;
}

RunConfig RunConfig::from_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    return from_text(buf.str());
}

std::shared_ptr<const SubcarrierLayout> RunConfig::make_layout() const
{
    auto layout = std::make_shared<SubcarrierLayout>();
    layout->n_fft = n_fft;
    layout->delta_f_hz = delta_f_hz;
    layout->active = parse_index_ranges(active_spec);
    layout->validate();
    return layout;
}

std::shared_ptr<const TapSet> RunConfig::make_tapset() const
{
    return std::make_shared<const TapSet>(TapSet::first(l_max));
}

LsOperator RunConfig::make_operator() const
{
    const auto layout = make_layout();
    const auto tapset = make_tapset();
    const double ridge =
        ridge_spec == "auto" ? default_ridge(*layout, *tapset) : parse_double_token(ridge_spec);
    return build_ls_operator(layout, tapset, ridge);
}

ChannelSpec RunConfig::make_channel(std::shared_ptr<const SubcarrierLayout> layout) const
{
    ChannelSpec spec;
    spec.carrier_hz = carrier_hz;
    spec.layout = std::move(layout);
    for (const std::string &token : split(channel_paths, ','))
    {
        const auto parts = split(token, ':');
        if (parts.size() != 3)
            throw ConfigError("channel path '" + trim(token) +
                              "' must be amplitude:phase_deg:delay_ns");
        const double amp = parse_double_token(parts[0]);
        const double phase = parse_double_token(parts[1]) * std::numbers::pi / 180.0;
        const double delay_ns = parse_double_token(parts[2]);
        if (amp <= 0.0)
            throw ConfigError("channel path amplitude must be positive");
        PathComponent p;
        p.gain = amp * cplx(std::cos(phase), std::sin(phase));
        p.delay_s = delay_ns * 1e-9;
        spec.paths.push_back(p);
    }
    spec.validate();
    return spec;
}

MotionModel RunConfig::make_motion() const
{
    MotionModel m;
    m.target_path_index = target_path;
    m.delay_amplitude_s = delay_amplitude_ns * 1e-9;
    m.gain_amplitude = gain_amplitude;
    m.rate_hz = rate_bpm / 60.0;
    m.phase_rad = phase_rad;
    return m;
}

DistortionRanges RunConfig::make_ranges(double ts) const
{
    DistortionRanges r;
    r.beta_min = beta_min;
    r.beta_max = beta_max;
    r.theta_min = theta_min;
    r.theta_max = theta_max;
    r.epsilon_min_s = epsilon_min_ts * ts;
    r.epsilon_max_s = epsilon_max_ts * ts;
    return r;
}

std::vector<double> RunConfig::frame_times() const
{
    const auto n = static_cast<std::size_t>(std::llround(fs_hz * duration_s));
    if (n == 0)
        throw ConfigError("trace.duration_s: too short for one frame at trace.fs_hz");
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i)
        times[i] = static_cast<double>(i) / fs_hz;
    return times;
}

void RunConfig::validate_scenario() const
{
    const auto layout = make_layout();
    const ChannelSpec spec = make_channel(layout);
    if (target_path >= spec.paths.size())
        throw ConfigError("motion.target_path is out of range for channel.paths");
    if (target_path == spec.strongest_path())
        throw ConfigError("motion.target_path must not be the strongest (static) path");
}

} // namespace domino
