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
// Command line front end:
//
//   domino simulate   --out trace.bin [--config cfg] [--seed N]
//   domino compensate TRACE --out series.csv [--scheme S] [--config cfg]
//   domino respire    TRACE --out rate.csv [--scheme S] [--config cfg]
//   domino bench      --out DIR [--config cfg] [--seed N]
//
// Exit codes: 0 success, 1 usage or config error, 2 data error,
// 3 benchmark acceptance failure. DOMINO_THREADS caps worker threads.

#include "domino/bench.hpp"
#include "domino/errors.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace
{

domino::RunConfig load_config(const std::string &config_path, std::optional<std::uint64_t> seed)
{
    domino::RunConfig cfg;
    if (!config_path.empty())
        cfg = domino::RunConfig::from_file(config_path);
    if (seed)
        cfg.seed = *seed;
    return cfg;
}

int run_simulate(const std::string &config_path, std::optional<std::uint64_t> seed,
                 const std::string &out_path)
{
    const domino::RunConfig cfg = load_config(config_path, seed);
    const domino::TraceFile trace = domino::simulate_trace(cfg);
    domino::write_trace(trace, out_path);
    std::cout << "wrote " << trace.n_frames() << " frames x " << trace.n_antennas
              << " antenna(s) to " << out_path << "\n";
    return 0;
}

int run_compensate(const std::string &trace_path, const std::string &config_path,
                   const std::string &scheme_name, const std::string &out_path)
{
    const domino::RunConfig cfg = load_config(config_path, std::nullopt);
    const domino::Scheme scheme = domino::parse_scheme(scheme_name);
    const domino::TraceFile trace = domino::read_trace(trace_path);
    const domino::LsOperator op = cfg.make_operator();
    if (!(*trace.layout == *op.layout))
        throw domino::LayoutMismatch("trace layout does not match the configured layout");

    const Eigen::MatrixXcd series = domino::scheme_series(trace, scheme, op, cfg.search);
    domino::write_series_csv(series, trace.timestamps, out_path);
    std::cout << "wrote " << series.rows() << " x " << series.cols() << " "
              << domino::scheme_name(scheme) << " series to " << out_path << "\n";
    return 0;
}

int run_respire(const std::string &trace_path, const std::string &config_path,
                const std::string &scheme_name, const std::string &out_path)
{
    const domino::RunConfig cfg = load_config(config_path, std::nullopt);
    const domino::Scheme scheme = domino::parse_scheme(scheme_name);
    const domino::TraceFile trace = domino::read_trace(trace_path);
    const domino::LsOperator op = cfg.make_operator();
    if (!(*trace.layout == *op.layout))
        throw domino::LayoutMismatch("trace layout does not match the configured layout");

    const domino::SchemeRespire result =
        domino::respire_trace(trace, scheme, op, cfg.search, cfg.band);
    if (!out_path.empty())
        domino::write_rate_csv(result, scheme, trace, out_path);
    std::cout << domino::scheme_name(scheme) << ": " << domino::format_double(result.rate.bpm)
              << " bpm (channel " << result.selection.index << ", confidence "
              << domino::format_double(result.rate.confidence) << ")\n";
    return 0;
}

int run_bench_cmd(const std::string &config_path, std::optional<std::uint64_t> seed,
                  const std::string &out_dir)
{
    const domino::RunConfig cfg = load_config(config_path, seed);
    const domino::BenchReport report = domino::run_bench(cfg);

    std::filesystem::create_directories(out_dir);
    const auto base = std::filesystem::path(out_dir);
    domino::write_runs_csv(report, (base / "runs.csv").string());
    domino::write_stats_csv(report, (base / "stats.csv").string());
    domino::write_cdf_csv(report, (base / "cdf.csv").string());

    const std::string summary = domino::summary_table(report, cfg);
    std::ofstream os(base / "summary.txt", std::ios::trunc);
    if (!os)
        throw domino::IoError("cannot write " + (base / "summary.txt").string());
    os << summary;
    std::cout << summary;

    const bool ok = report.stats.at(domino::Scheme::domino).mean <= cfg.bench.max_domino_mean_bpm;
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"hardware distortion compensation for WiFi channel sounding"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string scheme = "domino";
    std::string out_path;
    std::string trace_path;

    auto *simulate = app.add_subcommand("simulate", "synthesize a distorted CSI trace");
    simulate->add_option("--config", config_path, "run configuration file");
    simulate->add_option("--seed", seed, "override the configured seed");
    simulate->add_option("--out", out_path, "output trace path")->required();

    auto *compensate = app.add_subcommand("compensate", "export a compensated series as CSV");
    compensate->add_option("trace", trace_path, "input trace file")->required();
    compensate->add_option("--config", config_path, "run configuration file");
    compensate->add_option("--scheme", scheme,
                           "domino | domino-idft | csi-ratio | double-ratio | raw");
    compensate->add_option("--out", out_path, "output CSV path")->required();

    auto *respire = app.add_subcommand("respire", "estimate the respiration rate of a trace");
    respire->add_option("trace", trace_path, "input trace file")->required();
    respire->add_option("--config", config_path, "run configuration file");
    respire->add_option("--scheme", scheme,
                        "domino | domino-idft | csi-ratio | double-ratio | raw");
    respire->add_option("--out", out_path, "output CSV path");

    auto *bench = app.add_subcommand("bench", "run the scheme comparison grid");
    bench->add_option("--config", config_path, "run configuration file");
    bench->add_option("--seed", seed, "override the configured seed");
    bench->add_option("--out", out_path, "output directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try
    {
        if (simulate->parsed())
            return run_simulate(config_path, seed, out_path);
        if (compensate->parsed())
            return run_compensate(trace_path, config_path, scheme, out_path);
        if (respire->parsed())
            return run_respire(trace_path, config_path, scheme, out_path);
        return run_bench_cmd(config_path, seed, out_path);
    }
    catch (const domino::ConfigError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const domino::Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
