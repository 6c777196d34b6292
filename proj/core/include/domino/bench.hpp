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
// Scenario plumbing shared by the CLI and the benchmark: trace simulation
// from a RunConfig, per-scheme series extraction, rate estimation, and the
// Monte Carlo grid runner with CSV/report export.

#ifndef DOMINO_BENCH_HPP
#define DOMINO_BENCH_HPP

#include "domino/baselines.hpp"
#include "domino/config.hpp"
#include "domino/respiration.hpp"
#include "domino/trace.hpp"

#include <map>
#include <string>
#include <vector>

namespace domino
{

// Per-component noise std that yields the requested SNR against the RMS of
// the undistorted static channel. Infinite SNR gives 0.
double noise_std_for_snr(const ChannelSpec &spec, double snr_db);

// Same path magnitudes and delays with fresh per-path gain phases, the
// second-RF-chain channel for two-antenna traces.
ChannelSpec rephased_channel(const ChannelSpec &spec, std::uint64_t seed);

// Deterministic synthetic trace (with ground truth) for the configured
// scenario; honors n_antennas, SNR, motion, and distortion ranges.
TraceFile simulate_trace(const RunConfig &cfg);

// frames × channels series for one scheme: normalized CIR taps for the
// domino arms, per-subcarrier ratios or magnitudes for the baselines.
// Frames where the domino arms find no usable signal produce zero rows.
// threads = 0 picks the default worker count, 1 runs serially.
Eigen::MatrixXcd scheme_series(const TraceFile &trace, Scheme scheme, const LsOperator &op,
                               const SearchConfig &search, int threads = 0);

struct SchemeRespire
{
    SignalSelection selection;
    RateEstimate rate;
};

// Series extraction, channel selection, and rate estimation for one trace.
SchemeRespire respire_trace(const TraceFile &trace, Scheme scheme, const LsOperator &op,
                            const SearchConfig &search, const Band &band, int threads = 0);

struct BenchRow
{
    Scheme scheme = Scheme::domino;
    double rate_bpm = 0.0;
    double snr_db = 0.0;
    int rep = 0;
    double estimate_bpm = 0.0;
    double abs_error_bpm = 0.0;
    bool no_peak = false;
};

struct BenchReport
{
    std::vector<BenchRow> rows;
    std::map<Scheme, ErrorStats> stats;

    // Schemes ascending by mean error.
    std::vector<Scheme> ranking() const;
};

// Runs the rates × SNRs × reps grid with per-scenario random channels and
// independent (or shared, per config) per-antenna draws. Scenarios run in
// parallel; results are ordered by scenario index, so the report is
// deterministic for a given config. A scheme that raises NoPeak on a
// scenario is charged the worst in-band error.
BenchReport run_bench(const RunConfig &cfg);

// CSV exports. Headers are stable; numbers are shortest-round-trip with a
// period decimal separator regardless of locale.
void write_runs_csv(const BenchReport &report, const std::string &path);
void write_stats_csv(const BenchReport &report, const std::string &path);
void write_cdf_csv(const BenchReport &report, const std::string &path);

// Human-readable ranking table, including the acceptance verdict against
// cfg.bench.max_domino_mean_bpm.
std::string summary_table(const BenchReport &report, const RunConfig &cfg);

// Compensated series export: time_s,channel,re,im,magnitude.
void write_series_csv(const Eigen::MatrixXcd &series, const std::vector<double> &timestamps,
                      const std::string &path);

// Rate-estimate export for one trace; truth columns stay empty when the
// trace has no ground truth.
void write_rate_csv(const SchemeRespire &result, Scheme scheme, const TraceFile &trace,
                    const std::string &path);

// Locale-independent shortest-round-trip formatting used by every export.
std::string format_double(double v);

} // namespace domino

#endif
