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

#include "domino/bench.hpp"

#include "domino/compensation.hpp"
#include "domino/errors.hpp"
#include "domino/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace domino
{

namespace
{

// Substream indices far above any per-frame index, so scenario and channel
// randomness never collide with frame draws.
constexpr std::uint64_t kRephaseStream = std::uint64_t(1) << 40;
constexpr std::uint64_t kBenchStream = std::uint64_t(1) << 41;

constexpr Scheme kAllSchemes[] = {Scheme::domino, Scheme::domino_idft, Scheme::csi_ratio,
                                  Scheme::double_ratio, Scheme::raw};

void rephase_with(ChannelSpec &spec, Rng &rng)
{
    for (auto &path : spec.paths)
    {
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        path.gain = std::abs(path.gain) * cplx(std::cos(phi), std::sin(phi));
    }
}

// Random desk-scale scene: one dominant static path, the breathing path at
// index 1, and four weaker clutter arrivals.
ChannelSpec make_bench_channel(Rng &rng, std::shared_ptr<const SubcarrierLayout> layout,
                               double carrier_hz)
{
    const double ts = layout->ts();
    ChannelSpec spec;
    spec.carrier_hz = carrier_hz;
    spec.layout = std::move(layout);

    const double tau0 = rng.uniform(3.0, 5.0) * ts;
    auto phasor = [&rng]() {
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        return cplx(std::cos(phi), std::sin(phi));
    };

    spec.paths.push_back({1.0 * phasor(), tau0});
    spec.paths.push_back({0.45 * phasor(), tau0 + rng.uniform(3.5, 5.5) * ts});
    for (int i = 0; i < 4; ++i)
    {
        const double amp = 0.3 * std::pow(10.0, -rng.uniform(0.0, 10.0) / 20.0);
        spec.paths.push_back({amp * phasor(), tau0 + rng.uniform(2.0, 22.0) * ts});
    }
    return spec;
}

void fill_gt(TraceGroundTruth &gt, const std::vector<TraceEntry> &entries, int n_antennas,
             int antenna)
{
    for (std::size_t i = 0; i < entries.size(); ++i)
        gt.draws[i * static_cast<std::size_t>(n_antennas) + static_cast<std::size_t>(antenna)] =
            entries[i].draw;
}

std::ofstream open_csv(const std::string &path)
{
    std::ofstream os(path, std::ios::trunc);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    return os;
}

} // namespace

std::string format_double(double v)
{
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

double noise_std_for_snr(const ChannelSpec &spec, double snr_db)
{
    if (std::isinf(snr_db) && snr_db > 0.0)
        return 0.0;
    Rng rng(0);
    const CsiFrame clean = synth_csi(spec, DistortionDraw{}, 0.0, rng);
    const double rms =
        std::sqrt(clean.values.squaredNorm() / static_cast<double>(clean.values.size()));
    return rms / std::pow(10.0, snr_db / 20.0) / std::sqrt(2.0);
}

ChannelSpec rephased_channel(const ChannelSpec &spec, std::uint64_t seed)
{
    ChannelSpec out = spec;
    Rng rng = Rng::substream(seed, kRephaseStream);
    rephase_with(out, rng);
    return out;
}

TraceFile simulate_trace(const RunConfig &cfg)
{
    const auto layout = cfg.make_layout();
    const ChannelSpec spec = cfg.make_channel(layout);
    const MotionModel motion = cfg.make_motion();
    const std::vector<double> times = cfg.frame_times();
    const DistortionRanges ranges = cfg.make_ranges(layout->ts());
    const double noise = noise_std_for_snr(spec, cfg.snr_db);

    TraceFile trace;
    trace.layout = layout;
    trace.carrier_hz = cfg.carrier_hz;
    trace.n_antennas = cfg.n_antennas;
    trace.timestamps = times;

    const auto n_frames = times.size();
    const auto n_active = static_cast<Eigen::Index>(layout->active.size());
    trace.data.resize(static_cast<Eigen::Index>(n_frames) * cfg.n_antennas, n_active);

    TraceGroundTruth gt;
    gt.rate_bpm.assign(n_frames, cfg.rate_bpm);
    gt.draws.resize(n_frames * static_cast<std::size_t>(cfg.n_antennas));

    if (cfg.n_antennas == 1)
    {
        const auto entries = respiration_trace(spec, motion, times, ranges, cfg.seed, noise);
        for (std::size_t i = 0; i < n_frames; ++i)
            trace.data.row(static_cast<Eigen::Index>(i)) = entries[i].frame.values.transpose();
        fill_gt(gt, entries, 1, 0);
    }
    else
    {
        const ChannelSpec spec_b = rephased_channel(spec, cfg.seed);
        const auto [ea, eb] = two_antenna_trace(spec, spec_b, motion, times, ranges, cfg.seed,
                                                noise, cfg.shared_draws);
        for (std::size_t i = 0; i < n_frames; ++i)
        {
            trace.data.row(static_cast<Eigen::Index>(i) * 2) = ea[i].frame.values.transpose();
            trace.data.row(static_cast<Eigen::Index>(i) * 2 + 1) = eb[i].frame.values.transpose();
        }
        fill_gt(gt, ea, 2, 0);
        fill_gt(gt, eb, 2, 1);
    }

    trace.ground_truth = std::move(gt);
    return trace;
}

Eigen::MatrixXcd scheme_series(const TraceFile &trace, Scheme scheme, const LsOperator &op,
                               const SearchConfig &search, int threads)
{
    trace.validate();
    const auto n_frames = static_cast<Eigen::Index>(trace.n_frames());

    switch (scheme)
    {
    case Scheme::domino:
    {
        Eigen::MatrixXcd out =
            Eigen::MatrixXcd::Zero(n_frames, static_cast<Eigen::Index>(op.tapset->size()));
        parallel_for(
            static_cast<std::size_t>(n_frames),
            [&](std::size_t i) {
                try
                {
                    const CompensatedFrame c =
                        compensate_frame(trace.frame(i, 0), op, search);
                    out.row(static_cast<Eigen::Index>(i)) = c.cir_norm.taps.transpose();
                }
                catch (const EmptySignal &)
                {
                }
                catch (const DominantTapTooWeak &)
                {
                }
            },
            threads);
        return out;
    }
    case Scheme::domino_idft:
    {
        const auto &taps = op.tapset->taps;
        const auto n_taps = static_cast<Eigen::Index>(taps.size());
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_frames, n_taps);
        parallel_for(
            static_cast<std::size_t>(n_frames),
            [&](std::size_t i) {
                const CsiFrame frame = trace.frame(i, 0);
                const Cir coarse = estimate_cir_idft(frame);

                Eigen::VectorXcd window(n_taps);
                for (Eigen::Index j = 0; j < n_taps; ++j)
                    window[j] = coarse.taps[taps[static_cast<std::size_t>(j)]];

                const double floor = cir_noise_floor(window, search);
                Eigen::Index peak = 0;
                const double best = window.cwiseAbs().maxCoeff(&peak);
                if (best <= floor)
                    return;

                try
                {
                    const AlignmentResult align = refine_alignment(
                        frame, taps[static_cast<std::size_t>(peak)], search);
                    const CsiFrame aligned = apply_delay_shift(frame, -align.epsilon_est);
                    const Cir cir = estimate_cir_idft(aligned);
                    const cplx tap0 = cir.taps[0];
                    if (std::abs(tap0) < cir_noise_floor(window, search))
                        return;
                    for (Eigen::Index j = 0; j < n_taps; ++j)
                        out(static_cast<Eigen::Index>(i), j) =
                            cir.taps[taps[static_cast<std::size_t>(j)]] / tap0;
                    out(static_cast<Eigen::Index>(i), 0) = cplx(1.0, 0.0);
                }
                catch (const EmptySignal &)
                {
                }
            },
            threads);
        return out;
    }
    case Scheme::csi_ratio:
    {
        if (trace.n_antennas < 2)
            throw LengthMismatch("csi-ratio needs a 2-antenna trace");
        return csi_ratio(trace.antenna_frames(0), trace.antenna_frames(1)).values;
    }
    case Scheme::double_ratio:
    {
        const auto frames = trace.antenna_frames(0);
        return double_ratio(frames, default_ref_subcarrier(frames)).values;
    }
    case Scheme::raw:
        return raw_magnitude(trace.antenna_frames(0)).values;
    }
    throw ConfigError("scheme_series: invalid scheme tag");
}

SchemeRespire respire_trace(const TraceFile &trace, Scheme scheme, const LsOperator &op,
                            const SearchConfig &search, const Band &band, int threads)
{
    if (trace.n_frames() < 2)
        throw TooShort("respire_trace: need at least two frames");
    const double span = trace.timestamps.back() - trace.timestamps.front();
    if (!(span > 0.0))
        throw TooShort("respire_trace: timestamps do not advance");
    const double fs = static_cast<double>(trace.n_frames() - 1) / span;

    const Eigen::MatrixXcd series = scheme_series(trace, scheme, op, search, threads);

    SchemeRespire out;
    out.selection = select_signal(series, fs, band);
    out.rate = estimate_rate(series.col(out.selection.index).cwiseAbs(), fs, band);
    return out;
}

std::vector<Scheme> BenchReport::ranking() const
{
    std::vector<Scheme> order;
    for (const auto &[scheme, st] : stats)
        order.push_back(scheme);
    std::stable_sort(order.begin(), order.end(), [this](Scheme a, Scheme b) {
        return stats.at(a).mean < stats.at(b).mean;
    });
    return order;
}

BenchReport run_bench(const RunConfig &cfg)
{
    if (cfg.bench.rates_bpm.empty() || cfg.bench.snrs_db.empty() || cfg.bench.reps < 1)
        throw ConfigError("bench grid is empty");

    const auto layout = cfg.make_layout();
    const LsOperator op = cfg.make_operator();
    const std::vector<double> times = cfg.frame_times();
    const DistortionRanges ranges = cfg.make_ranges(layout->ts());

    const std::size_t n_rates = cfg.bench.rates_bpm.size();
    const std::size_t n_snrs = cfg.bench.snrs_db.size();
    const std::size_t reps = static_cast<std::size_t>(cfg.bench.reps);
    const std::size_t n_scenarios = n_rates * n_snrs * reps;
    constexpr std::size_t n_schemes = std::size(kAllSchemes);

    std::vector<BenchRow> rows(n_scenarios * n_schemes);

    parallel_for(n_scenarios, [&](std::size_t s) {
        const double rate = cfg.bench.rates_bpm[s / (n_snrs * reps)];
        const double snr = cfg.bench.snrs_db[(s / reps) % n_snrs];
        const int rep = static_cast<int>(s % reps);

        Rng rng = Rng::substream(cfg.seed, kBenchStream + s);
        const std::uint64_t scenario_seed = rng.next_u64();

        ChannelSpec spec = make_bench_channel(rng, layout, cfg.carrier_hz);
        ChannelSpec spec_b = spec;
        rephase_with(spec_b, rng);

        MotionModel motion = cfg.make_motion();
        motion.rate_hz = rate / 60.0;

        const double noise = noise_std_for_snr(spec, snr);
        const auto [ea, eb] = two_antenna_trace(spec, spec_b, motion, times, ranges,
                                                scenario_seed, noise, cfg.shared_draws);

        TraceFile trace;
        trace.layout = layout;
        trace.carrier_hz = cfg.carrier_hz;
        trace.n_antennas = 2;
        trace.timestamps = times;
        trace.data.resize(static_cast<Eigen::Index>(times.size()) * 2,
                          static_cast<Eigen::Index>(layout->active.size()));
        for (std::size_t i = 0; i < times.size(); ++i)
        {
            trace.data.row(static_cast<Eigen::Index>(i) * 2) = ea[i].frame.values.transpose();
            trace.data.row(static_cast<Eigen::Index>(i) * 2 + 1) = eb[i].frame.values.transpose();
        }

        for (std::size_t j = 0; j < n_schemes; ++j)
        {
            BenchRow row;
            row.scheme = kAllSchemes[j];
            row.rate_bpm = rate;
            row.snr_db = snr;
            row.rep = rep;
            try
            {
                const SchemeRespire r =
                    respire_trace(trace, kAllSchemes[j], op, cfg.search, cfg.band, 1);
                row.estimate_bpm = r.rate.bpm;
                row.abs_error_bpm = std::abs(r.rate.bpm - rate);
            }
            catch (const NoPeak &)
            {
                row.no_peak = true;
                row.abs_error_bpm = std::max(std::abs(60.0 * cfg.band.lo_hz - rate),
                                             std::abs(60.0 * cfg.band.hi_hz - rate));
            }
            rows[s * n_schemes + j] = row;
        }
    });

    BenchReport report;
    report.rows = std::move(rows);
    for (Scheme scheme : kAllSchemes)
    {
        std::vector<double> estimates;
        std::vector<double> truths;
        for (const BenchRow &row : report.rows)
        {
            if (row.scheme != scheme)
                continue;
            estimates.push_back(row.rate_bpm + row.abs_error_bpm);
            truths.push_back(row.rate_bpm);
        }
        report.stats[scheme] = error_stats(estimates, truths);
    }
    return report;
}

void write_runs_csv(const BenchReport &report, const std::string &path)
{
    auto os = open_csv(path);
    os << "scheme,rate_bpm,snr_db,rep,estimate_bpm,abs_error_bpm,no_peak\n";
    for (const BenchRow &row : report.rows)
    {
        os << scheme_name(row.scheme) << ',' << format_double(row.rate_bpm) << ','
           << format_double(row.snr_db) << ',' << row.rep << ','
           << format_double(row.estimate_bpm) << ',' << format_double(row.abs_error_bpm) << ','
           << (row.no_peak ? 1 : 0) << '\n';
    }
}

void write_stats_csv(const BenchReport &report, const std::string &path)
{
    auto os = open_csv(path);
    os << "scheme,n,mean_bpm,median_bpm,p80_bpm\n";
    for (const auto &[scheme, st] : report.stats)
    {
        os << scheme_name(scheme) << ',' << st.samples.size() << ',' << format_double(st.mean)
           << ',' << format_double(st.median) << ',' << format_double(st.p80) << '\n';
    }
}

void write_cdf_csv(const BenchReport &report, const std::string &path)
{
    auto os = open_csv(path);
    os << "scheme,error_bpm,fraction\n";
    for (const auto &[scheme, st] : report.stats)
    {
        for (const auto &[error, fraction] : error_cdf(st))
            os << scheme_name(scheme) << ',' << format_double(error) << ','
               << format_double(fraction) << '\n';
    }
}

std::string summary_table(const BenchReport &report, const RunConfig &cfg)
{
    std::ostringstream os;
    os << "scheme        mean_bpm  median_bpm  p80_bpm\n";
    for (Scheme scheme : report.ranking())
    {
        const ErrorStats &st = report.stats.at(scheme);
        os << scheme_name(scheme);
        for (std::size_t i = scheme_name(scheme).size(); i < 14; ++i)
            os << ' ';
        os << format_double(st.mean) << "  " << format_double(st.median) << "  "
           << format_double(st.p80) << '\n';
    }
    os << "sharp: not implemented\n";

    const double domino_mean = report.stats.at(Scheme::domino).mean;
    const bool ok = domino_mean <= cfg.bench.max_domino_mean_bpm;
    os << "acceptance: domino mean error " << format_double(domino_mean) << " bpm "
       << (ok ? "<=" : ">") << " " << format_double(cfg.bench.max_domino_mean_bpm) << " bpm -> "
       << (ok ? "PASS" : "FAIL") << '\n';
    return os.str();
}

void write_series_csv(const Eigen::MatrixXcd &series, const std::vector<double> &timestamps,
                      const std::string &path)
{
    if (static_cast<std::size_t>(series.rows()) != timestamps.size())
        throw LengthMismatch("write_series_csv: series and timestamps differ in length");
    auto os = open_csv(path);
    os << "time_s,channel,re,im,magnitude\n";
    for (Eigen::Index t = 0; t < series.rows(); ++t)
    {
        for (Eigen::Index c = 0; c < series.cols(); ++c)
        {
            const cplx v = series(t, c);
            os << format_double(timestamps[static_cast<std::size_t>(t)]) << ',' << c << ','
               << format_double(v.real()) << ',' << format_double(v.imag()) << ','
               << format_double(std::abs(v)) << '\n';
        }
    }
}

void write_rate_csv(const SchemeRespire &result, Scheme scheme, const TraceFile &trace,
                    const std::string &path)
{
    auto os = open_csv(path);
    os << "scheme,selected_channel,periodicity_score,estimate_bpm,confidence,truth_bpm,"
          "abs_error_bpm\n";
    os << scheme_name(scheme) << ',' << result.selection.index << ','
       << format_double(result.selection.periodicity_score) << ','
       << format_double(result.rate.bpm) << ',' << format_double(result.rate.confidence) << ',';
    if (trace.ground_truth && !trace.ground_truth->rate_bpm.empty())
    {
        double sum = 0.0;
        for (double r : trace.ground_truth->rate_bpm)
            sum += r;
        const double truth = sum / static_cast<double>(trace.ground_truth->rate_bpm.size());
        os << format_double(truth) << ',' << format_double(std::abs(result.rate.bpm - truth));
    }
    else
    {
        os << ',';
    }
    os << '\n';
}

} // namespace domino
