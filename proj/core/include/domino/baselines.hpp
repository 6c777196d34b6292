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
// Reference compensation schemes: two-antenna CSI ratio, reference-subcarrier
// double ratio, and the raw-magnitude control arm. Ratios whose denominator
// falls under a guard floor are masked and zeroed, so no non-finite value
// ever leaves this module.

#ifndef DOMINO_BASELINES_HPP
#define DOMINO_BASELINES_HPP

#include "domino/types.hpp"

#include <string>
#include <vector>

namespace domino
{

// Compensation scheme tags. The first two are the toolkit's own arms (LS and
// IDFT CIR estimation); the rest are the baseline schemes in this module.
enum class Scheme
{
    domino,
    domino_idft,
    csi_ratio,
    double_ratio,
    raw
};

// CLI spellings: domino, domino-idft, csi-ratio, double-ratio, raw.
std::string scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string &name);

// Per-frame, per-subcarrier series produced by a baseline scheme. mask is
// true where the entry is valid; masked entries hold 0.
struct RatioSeries
{
    Eigen::MatrixXcd values; // frames × active subcarriers
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
    Scheme scheme = Scheme::raw;
};

// Denominator guard: entries where the denominator magnitude falls below
// 1e−6 × the denominator frame's median magnitude are masked.
inline constexpr double kGuardFloorRel = 1e-6;

// Element-wise H_a[k]/H_b[k] per frame. Cancels distortions common to both
// antennas; per-chain draws leave a time-varying residual.
RatioSeries csi_ratio(const std::vector<CsiFrame> &frames_a, const std::vector<CsiFrame> &frames_b);

// Per frame H[k]/H[ref] for every active k; the reference column is masked.
// ref_subcarrier is a DFT bin index and must be active. Cancels any
// frame-global complex scalar; a delay offset ε leaves the residual ramp
// e^{−j2π(f_k − f_ref)ε}.
RatioSeries double_ratio(const std::vector<CsiFrame> &frames, int ref_subcarrier);

// Active subcarrier (DFT bin index) with the highest mean magnitude over the
// first `window` frames, the default double-ratio reference.
int default_ref_subcarrier(const std::vector<CsiFrame> &frames, std::size_t window = 100);

// |H[k]| per frame: the no-compensation control arm.
RatioSeries raw_magnitude(const std::vector<CsiFrame> &frames);

} // namespace domino

#endif
