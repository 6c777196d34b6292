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
// Respiration-rate estimation from compensated tap or subcarrier series,
// plus the error statistics used by the benchmark. One fixed spectral
// estimator serves every compensation scheme, so benchmark differences
// reflect compensation quality, not estimator tuning.

#ifndef DOMINO_RESPIRATION_HPP
#define DOMINO_RESPIRATION_HPP

#include "domino/types.hpp"

#include <utility>
#include <vector>

namespace domino
{

// Frequency band searched for the respiration peak. The default covers the
// adult range 6 to 30 breaths per minute.
struct Band
{
    double lo_hz = 0.1;
    double hi_hz = 0.5;
};

// Channel picked for rate estimation. periodicity_score is the fraction of
// the detrended signal's power inside the band, in [0, 1].
struct SignalSelection
{
    Eigen::Index index = 0;
    double periodicity_score = 0.0;
};

// confidence is the ratio of the spectral peak to the median spectral
// magnitude; estimates below ratio 3 are rejected as NoPeak upstream.
struct RateEstimate
{
    double bpm = 0.0;
    double confidence = 0.0;
};

// Absolute-error summary of a benchmark run. median/mean/p80 derive from
// samples via linear-interpolation percentiles.
struct ErrorStats
{
    std::vector<double> samples;
    double median = 0.0;
    double mean = 0.0;
    double p80 = 0.0;
};

// Subtracts a centred moving mean (window window_s seconds, truncated at the
// edges), removing drift below the band without touching it.
Eigen::VectorXd detrend_moving_mean(const Eigen::VectorXd &x, double fs, double window_s = 10.0);

// Scores every column of series by in-band power fraction of its detrended
// magnitude and returns the best (ties toward the lowest index). Needs at
// least 30 s of data and fs > 2 × band.hi_hz; throws TooShort otherwise.
SignalSelection select_signal(const Eigen::MatrixXcd &series, double fs, const Band &band = {});

// Spectral rate estimate: detrend, Hann window, zero-pad to ≥ 8× length,
// locate the in-band magnitude peak, refine it by quadratic interpolation
// over three bins. Throws TooShort on under 30 s of data and NoPeak when the
// peak-to-median ratio falls below 3.
RateEstimate estimate_rate(const Eigen::VectorXd &signal, double fs, const Band &band = {});

// Absolute errors |estimate − truth| with interpolated percentile summary.
ErrorStats error_stats(const std::vector<double> &estimates, const std::vector<double> &truths);

// Sorted (error, cumulative fraction) pairs for CDF export.
std::vector<std::pair<double, double>> error_cdf(const ErrorStats &stats);

} // namespace domino

#endif
