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
// Multipath channel synthesis with per-frame hardware distortions.
//
// The frame model on active subcarrier k (baseband frequency f_k):
//
//   H[k] = β e^{−jθ} Σ_l α_l e^{−j2π f_c τ_l} e^{−j2π f_k (τ_l + ε)} + noise
//
// and its delay-domain counterpart
//
//   h[n] = β e^{−jθ} Σ_l α_l e^{−j2π f_c τ_l} p[n, τ_l + ε],
//
// where p is the band-limited pulse induced by the active set (see
// sample_pulse). Both views are generated from the same parameters, so the
// frequency-domain synthesizer is the single source of truth.

#ifndef DOMINO_CHANNEL_MODEL_HPP
#define DOMINO_CHANNEL_MODEL_HPP

#include "domino/rng.hpp"
#include "domino/types.hpp"

#include <cstdint>
#include <vector>

namespace domino
{

// One propagation path: complex gain α_l and delay τ_l.
struct PathComponent
{
    cplx gain{1.0, 0.0};
    double delay_s = 0.0;
};

// Ground-truth multipath description.
struct ChannelSpec
{
    std::vector<PathComponent> paths;
    double carrier_hz = 0.0;
    std::shared_ptr<const SubcarrierLayout> layout;

    // Index of the maximum-|gain| path, ties broken by smallest delay.
    std::size_t strongest_path() const;

    // Throws domino::Error when a delay falls outside the tap window
    // [0, N·T_s) or the spec is otherwise malformed.
    void validate() const;
};

// One frame's hardware distortion triple.
struct DistortionDraw
{
    double beta = 1.0;    // magnitude distortion, > 0
    double theta = 0.0;   // phase offset, radians
    double epsilon = 0.0; // delay shift, seconds; |ε| < N·T_s/4

    void validate(double window_s) const;
};

// Uniform sampling ranges for per-frame draws. Defaults stress the
// compensator beyond typical AGC/PDD variation.
struct DistortionRanges
{
    double beta_min = 0.5, beta_max = 2.0;
    double theta_min = 0.0, theta_max = 6.283185307179586476925286766559;
    double epsilon_min_s = 0.0, epsilon_max_s = 0.0;

    DistortionDraw sample(Rng &rng) const;

    // β ∈ [0.5, 2], θ ∈ [0, 2π), ε ∈ [−2·ts, 2·ts].
    static DistortionRanges defaults(double ts);
};

// Sinusoidal modulation of one non-dominant path, the synthetic stand-in
// for a breathing target.
struct MotionModel
{
    std::size_t target_path_index = 1;
    double delay_amplitude_s = 0.0;
    double gain_amplitude = 0.0; // relative, in [0, 1)
    double rate_hz = 0.25;
    double phase_rad = 0.0;
};

// Fractional-delay misalignment Δ(τ̂) = τ̂ − round(τ̂/ts)·ts ∈ [−ts/2, ts/2].
// Ties round half away from zero.
double fractional_delay(double tau_hat, double ts);

// Band-limited pulse p[n, τ]: the Dirichlet kernel induced by the active
// subcarrier set, normalized so that an on-grid path has peak magnitude 1:
//
//   p[n, τ] = (1/|𝒦|) Σ_{k∈𝒦} e^{+j2π k̃ (n − τ/ts) / N}
//
// with k̃ the signed baseband index.
cplx sample_pulse(int n, double tau, double ts, const SubcarrierLayout &layout);

// Distorted CSI frame; noise_std is the per-component std of the additive
// circularly symmetric Gaussian. Pure when noise_std = 0.
CsiFrame synth_csi(const ChannelSpec &spec, const DistortionDraw &draw, double noise_std,
                   Rng &rng, double timestamp_s = 0.0);

// Noise-free distorted CIR on taps [0, n_taps) via sample_pulse.
Cir synth_cir(const ChannelSpec &spec, const DistortionDraw &draw, int n_taps);

// One simulated frame along with its ground truth.
struct TraceEntry
{
    CsiFrame frame;
    DistortionDraw draw;
    ChannelSpec spec_at_t;
};

// Channel spec at time t under the motion model.
ChannelSpec spec_at_time(const ChannelSpec &spec, const MotionModel &motion, double t);

// Respiration-modulated frame sequence with fresh per-frame distortion
// draws. Frame i uses the RNG substream (seed, i), so generation order and
// thread count do not affect the output. Rejects motion that targets the
// strongest path.
std::vector<TraceEntry> respiration_trace(const ChannelSpec &spec, const MotionModel &motion,
                                          const std::vector<double> &frame_times,
                                          const DistortionRanges &ranges, std::uint64_t seed,
                                          double noise_std = 0.0);

// Two-antenna variant feeding the CSI-ratio baseline. Antenna a draws from
// substream (seed, 2i), antenna b from (seed, 2i+1); with shared_draws the
// distortion triple of antenna a is reused for b (noise stays independent).
std::pair<std::vector<TraceEntry>, std::vector<TraceEntry>>
two_antenna_trace(const ChannelSpec &spec_a, const ChannelSpec &spec_b, const MotionModel &motion,
                  const std::vector<double> &frame_times, const DistortionRanges &ranges,
                  std::uint64_t seed, double noise_std = 0.0, bool shared_draws = false);

} // namespace domino

#endif
