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

#include "domino/respiration.hpp"

#include "domino/errors.hpp"
#include "domino/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace domino
{

namespace
{

constexpr double kMinDurationS = 30.0;
constexpr double kMinPeakToMedian = 3.0;

void check_band(const Band &band)
{
    if (!(band.lo_hz > 0.0) || !(band.hi_hz > band.lo_hz))
        throw ConfigError("respiration band must satisfy 0 < lo < hi");
}

void check_length(Eigen::Index n, double fs, const Band &band, const char *where)
{
    if (!(fs > 0.0))
        throw ConfigError(std::string(where) + ": sampling rate must be positive");
    if (fs <= 2.0 * band.hi_hz)
        throw TooShort(std::string(where) + ": sampling rate " + std::to_string(fs) +
                       " Hz cannot resolve the band");
    if (static_cast<double>(n) < kMinDurationS * fs)
        throw TooShort(std::string(where) + ": need at least 30 s of data");
}

double spectrum_median(const std::vector<double> &mags)
{
    // Skips the DC bin.
    std::vector<double> work(mags.begin() + 1, mags.end());
    const std::size_t mid = work.size() / 2;
    std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(mid), work.end());
    double median = work[mid];
    if (work.size() % 2 == 0)
    {
        const double lower =
            *std::max_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (median + lower);
    }
    return median;
}

double percentile(std::vector<double> sorted, double q)
{
    const double rank = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    const double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= sorted.size())
        return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

Eigen::VectorXd detrend_moving_mean(const Eigen::VectorXd &x, double fs, double window_s)
{
    const Eigen::Index n = x.size();
    if (n == 0)
        return x;

    Eigen::Index w = static_cast<Eigen::Index>(std::lround(window_s * fs));
    w = std::clamp<Eigen::Index>(w, 1, n);

    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (Eigen::Index i = 0; i < n; ++i)
        prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + x[i];

    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const Eigen::Index lo = std::max<Eigen::Index>(0, i - w / 2);
        const Eigen::Index hi = std::min(n, lo + w);
        const double mean = (prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)]) /
                            static_cast<double>(hi - lo);
        out[i] = x[i] - mean;
    }
    return out;
}

SignalSelection select_signal(const Eigen::MatrixXcd &series, double fs, const Band &band)
{
    check_band(band);
    check_length(series.rows(), fs, band, "select_signal");
    if (series.cols() == 0)
        throw TooShort("select_signal: no channels");

    const Eigen::Index n = series.rows();
    SignalSelection best;
    best.index = 0;
    best.periodicity_score = -1.0;

    std::vector<double> signal(static_cast<std::size_t>(n));
    std::vector<cplx> spectrum;
    for (Eigen::Index c = 0; c < series.cols(); ++c)
    {
        const Eigen::VectorXd detrended = detrend_moving_mean(series.col(c).cwiseAbs(), fs);
        for (Eigen::Index i = 0; i < n; ++i)
            signal[static_cast<std::size_t>(i)] = detrended[i];
        fft::rdft(signal, spectrum);

        double total = 0.0;
        double in_band = 0.0;
        for (std::size_t j = 1; j < spectrum.size(); ++j)
        {
            const double p = std::norm(spectrum[j]);
            total += p;
            const double f = static_cast<double>(j) * fs / static_cast<double>(n);
            if (f >= band.lo_hz && f <= band.hi_hz)
                in_band += p;
        }
        const double score = total > 0.0 ? in_band / total : 0.0;
        if (score > best.periodicity_score)
        {
            best.periodicity_score = score;
            best.index = c;
        }
    }
    return best;
}

RateEstimate estimate_rate(const Eigen::VectorXd &signal, double fs, const Band &band)
{
    check_band(band);
    check_length(signal.size(), fs, band, "estimate_rate");

    const Eigen::Index n = signal.size();
    const Eigen::VectorXd detrended = detrend_moving_mean(signal, fs);

    std::size_t n_fft = 1;
    while (n_fft < static_cast<std::size_t>(n) * 8)
        n_fft *= 2;

    std::vector<double> padded(n_fft, 0.0);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double hann =
            0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(n - 1)));
        padded[static_cast<std::size_t>(i)] = detrended[i] * hann;
    }

    std::vector<cplx> spectrum;
    fft::rdft(padded, spectrum);
    std::vector<double> mags(spectrum.size());
    for (std::size_t j = 0; j < spectrum.size(); ++j)
        mags[j] = std::abs(spectrum[j]);

    const double bin_hz = fs / static_cast<double>(n_fft);
    std::size_t peak = 0;
    double peak_mag = -1.0;
    for (std::size_t j = 1; j < mags.size(); ++j)
    {
        const double f = static_cast<double>(j) * bin_hz;
        if (f < band.lo_hz || f > band.hi_hz)
            continue;
        if (mags[j] > peak_mag)
        {
            peak_mag = mags[j];
            peak = j;
        }
    }
    if (peak == 0)
        throw NoPeak("estimate_rate: band contains no spectral bins");

    const double median = spectrum_median(mags);
    double confidence;
    if (median > 0.0)
        confidence = peak_mag / median;
    else
        confidence = peak_mag > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (confidence < kMinPeakToMedian)
        throw NoPeak("estimate_rate: peak-to-median ratio " + std::to_string(confidence) +
                     " below 3");

    double delta = 0.0;
    if (peak + 1 < mags.size())
    {
        const double ym = mags[peak - 1];
        const double y0 = mags[peak];
        const double yp = mags[peak + 1];
        const double den = ym - 2.0 * y0 + yp;
        if (den < 0.0)
            delta = std::clamp(0.5 * (ym - yp) / den, -0.5, 0.5);
    }

    const double f_peak = (static_cast<double>(peak) + delta) * bin_hz;
    RateEstimate out;
    out.bpm = std::clamp(60.0 * f_peak, 60.0 * band.lo_hz, 60.0 * band.hi_hz);
    out.confidence = confidence;
    return out;
}

ErrorStats error_stats(const std::vector<double> &estimates, const std::vector<double> &truths)
{
    if (estimates.size() != truths.size())
        throw LengthMismatch("error_stats: estimate and truth lists differ in length");
    if (estimates.empty())
        throw LengthMismatch("error_stats: empty input");

    ErrorStats out;
    out.samples.resize(estimates.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i)
    {
        out.samples[i] = std::abs(estimates[i] - truths[i]);
        sum += out.samples[i];
    }
    out.mean = sum / static_cast<double>(out.samples.size());

    std::vector<double> sorted = out.samples;
    std::sort(sorted.begin(), sorted.end());
    out.median = percentile(sorted, 0.5);
    out.p80 = percentile(sorted, 0.8);
    return out;
}

std::vector<std::pair<double, double>> error_cdf(const ErrorStats &stats)
{
    std::vector<double> sorted = stats.samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> out(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        out[i] = {sorted[i], static_cast<double>(i + 1) / static_cast<double>(sorted.size())};
    return out;
}

} // namespace domino
