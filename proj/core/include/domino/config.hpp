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
// ------------------------------------------------------------------------
//
// Plain-text run configuration: key = value lines, '#' comments. Every key
// is validated on load with a line-precise error; unknown keys are rejected.
// See configs/desk.cfg for the full key list with defaults.

#ifndef DOMINO_CONFIG_HPP
#define DOMINO_CONFIG_HPP

#include "domino/channel_model.hpp"
#include "domino/cir_estimation.hpp"
#include "domino/compensation.hpp"
#include "domino/respiration.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace domino
{

// Parsed key = value document. Typed getters mark keys as consumed;
// finish() rejects whatever was never consumed.
class KeyValues
{
  public:
    static KeyValues parse(const std::string &text);

    bool has(const std::string &key) const;
    std::string get_string(const std::string &key, const std::string &fallback);
    double get_double(const std::string &key, double fallback, bool allow_inf = false);
    int get_int(const std::string &key, int fallback);
    std::uint64_t get_u64(const std::string &key, std::uint64_t fallback);
    bool get_bool(const std::string &key, bool fallback);

    // Line number of a key, for error messages about semantic problems.
    int line_of(const std::string &key) const;

    // Throws ConfigError naming the first unconsumed (unknown) key.
    void finish() const;

  private:
    struct Entry
    {
        std::string value;
        int line = 0;
        bool used = false;
    };
    std::map<std::string, Entry> entries_;
};

struct BenchGrid
{
    std::vector<double> rates_bpm{12.0, 15.0, 18.0};
    std::vector<double> snrs_db{10.0, 20.0};
    int reps = 5;

    // Acceptance threshold applied by the bench command's exit code.
    double max_domino_mean_bpm = 0.3;
};

// Everything a run needs, with desk-scale defaults. Derived objects come
// from the make_* factories so that layout, tap set, and operator stay
// consistent.
struct RunConfig
{
    int n_fft = 256;
    double delta_f_hz = 625e3;
    std::string active_spec = "1:117,139:255";
    double carrier_hz = 5.25e9;

    int l_max = 32;
    std::string ridge_spec = "auto";

    SearchConfig search;

    double beta_min = 0.5;
    double beta_max = 2.0;
    double theta_min = 0.0;
    double theta_max = 6.283185307179586476925286766559;
    double epsilon_min_ts = -2.0;
    double epsilon_max_ts = 2.0;

    std::size_t target_path = 1;
    double delay_amplitude_ns = 0.03;
    double gain_amplitude = 0.10;
    double rate_bpm = 15.0;
    double phase_rad = 0.0;

    double fs_hz = 50.0;
    double duration_s = 60.0;
    double snr_db = 20.0; // "inf" disables noise
    int n_antennas = 1;
    bool shared_draws = false;

    // amplitude:phase_deg:delay_ns triples; the dominant static path first,
    // the breathing path second.
    std::string channel_paths = "1.0:0:26.25,0.45:110:54.69,0.25:205:88.12";

    Band band;
    std::uint64_t seed = 1;
    BenchGrid bench;

    static RunConfig from_text(const std::string &text);
    static RunConfig from_file(const std::string &path);

    std::shared_ptr<const SubcarrierLayout> make_layout() const;
    std::shared_ptr<const TapSet> make_tapset() const;
    LsOperator make_operator() const;
    ChannelSpec make_channel(std::shared_ptr<const SubcarrierLayout> layout) const;
    MotionModel make_motion() const;
    DistortionRanges make_ranges(double ts) const;
    std::vector<double> frame_times() const;

    // Cross-field checks that need channel and motion together.
    void validate_scenario() const;
};

// "a:b,c" inclusive ranges and single indices, ascending required downstream.
std::vector<int> parse_index_ranges(const std::string &text);

// Comma-separated doubles, at least one required.
std::vector<double> parse_double_list(const std::string &text);

} // namespace domino

#endif
