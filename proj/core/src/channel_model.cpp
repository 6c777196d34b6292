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

#include "domino/channel_model.hpp"

#include "domino/errors.hpp"
#include "domino/parallel.hpp"

#include <cmath>
#include <numbers>

namespace domino
{

namespace
{
constexpr double two_pi = 2.0 * std::numbers::pi;
}

std::size_t ChannelSpec::strongest_path() const
{
    std::size_t best = 0;
    for (std::size_t l = 1; l < paths.size(); l++)
    {
        double m = std::abs(paths[l].gain);
        double mb = std::abs(paths[best].gain);
        if (m > mb || (m == mb && paths[l].delay_s < paths[best].delay_s))
            best = l;
    }
    return best;
}

void ChannelSpec::validate() const
{
    if (!layout)
        throw Error("channel: layout not set");
    layout->validate();
    if (paths.empty())
        throw Error("channel: needs at least one path");
    if (carrier_hz <= 0.0)
        throw Error("channel: carrier_hz must be positive");
    double window = layout->n_fft * layout->ts();
    for (const auto &p : paths)
    {
        if (p.delay_s < 0.0)
            throw Error("channel: negative path delay");
        if (p.delay_s >= window)
            throw Error("channel: path delay exceeds the tap window N*ts");
    }
}

void DistortionDraw::validate(double window_s) const
{
    if (beta <= 0.0)
        throw Error("distortion: beta must be positive");
    if (std::abs(epsilon) >= window_s / 4.0)
        throw Error("distortion: |epsilon| must stay below N*ts/4");
}

DistortionDraw DistortionRanges::sample(Rng &rng) const
{
    DistortionDraw d;
    d.beta = rng.uniform(beta_min, beta_max);
    d.theta = rng.uniform(theta_min, theta_max);
    d.epsilon = rng.uniform(epsilon_min_s, epsilon_max_s);
    return d;
}

DistortionRanges DistortionRanges::defaults(double ts)
{
    DistortionRanges r;
    r.epsilon_min_s = -2.0 * ts;
    r.epsilon_max_s = 2.0 * ts;
    return r;
}

double fractional_delay(double tau_hat, double ts)
{
    return tau_hat - std::round(tau_hat / ts) * ts;
}

cplx sample_pulse(int n, double tau, double ts, const SubcarrierLayout &layout)
{
    double u = (static_cast<double>(n) - tau / ts) / layout.n_fft;
    cplx acc(0.0, 0.0);
    for (int k : layout.active)
    {
        double phase = two_pi * layout.signed_index(k) * u;
        acc += cplx(std::cos(phase), std::sin(phase));
    }
    return acc / static_cast<double>(layout.active.size());
}

CsiFrame synth_csi(const ChannelSpec &spec, const DistortionDraw &draw, double noise_std, Rng &rng,
                   double timestamp_s)
{
    spec.validate();
    const auto &layout = *spec.layout;
    draw.validate(layout.n_fft * layout.ts());
    if (noise_std < 0.0)
        throw Error("synth_csi: noise_std must be non-negative");

    std::size_t n_paths = spec.paths.size();
    std::vector<cplx> path_phasor(n_paths);
    std::vector<double> eff_delay(n_paths);
    for (std::size_t l = 0; l < n_paths; l++)
    {
        double carrier_phase = -two_pi * spec.carrier_hz * spec.paths[l].delay_s;
        path_phasor[l] = spec.paths[l].gain * cplx(std::cos(carrier_phase), std::sin(carrier_phase));
        eff_delay[l] = spec.paths[l].delay_s + draw.epsilon;
    }
    cplx scale = draw.beta * cplx(std::cos(draw.theta), -std::sin(draw.theta));

    CsiFrame frame;
    frame.layout = spec.layout;
    frame.timestamp_s = timestamp_s;
    frame.values.resize(static_cast<Eigen::Index>(layout.active.size()));
    for (std::size_t i = 0; i < layout.active.size(); i++)
    {
        double f_k = layout.baseband_hz(layout.active[i]);
        cplx acc(0.0, 0.0);
        for (std::size_t l = 0; l < n_paths; l++)
        {
            double phase = -two_pi * f_k * eff_delay[l];
            acc += path_phasor[l] * cplx(std::cos(phase), std::sin(phase));
        }
        cplx v = scale * acc;
        if (noise_std > 0.0)
            v += rng.normal_complex(noise_std);
        frame.values[static_cast<Eigen::Index>(i)] = v;
    }
    return frame;
}

Cir synth_cir(const ChannelSpec &spec, const DistortionDraw &draw, int n_taps)
{
    spec.validate();
    const auto &layout = *spec.layout;
    draw.validate(layout.n_fft * layout.ts());
    if (n_taps <= 0 || n_taps > layout.n_fft)
        throw Error("synth_cir: n_taps must lie in [1, n_fft]");

    double ts = layout.ts();
    std::size_t n_paths = spec.paths.size();
    std::vector<cplx> path_phasor(n_paths);
    for (std::size_t l = 0; l < n_paths; l++)
    {
        double carrier_phase = -two_pi * spec.carrier_hz * spec.paths[l].delay_s;
        path_phasor[l] = spec.paths[l].gain * cplx(std::cos(carrier_phase), std::sin(carrier_phase));
    }
    cplx scale = draw.beta * cplx(std::cos(draw.theta), -std::sin(draw.theta));

    Cir cir;
    auto tapset = std::make_shared<TapSet>(TapSet::first(n_taps));
    cir.tapset = tapset;
    cir.ts = ts;
    cir.taps.resize(n_taps);
    for (int n = 0; n < n_taps; n++)
    {
        cplx acc(0.0, 0.0);
        for (std::size_t l = 0; l < n_paths; l++)
            acc += path_phasor[l] * sample_pulse(n, spec.paths[l].delay_s + draw.epsilon, ts, layout);
        cir.taps[n] = scale * acc;
    }
    return cir;
}

ChannelSpec spec_at_time(const ChannelSpec &spec, const MotionModel &motion, double t)
{
    ChannelSpec out = spec;
    double s = std::sin(two_pi * motion.rate_hz * t + motion.phase_rad);
    auto &path = out.paths.at(motion.target_path_index);
    path.delay_s += motion.delay_amplitude_s * s;
    path.gain *= (1.0 + motion.gain_amplitude * s);
    return out;
}

namespace
{

void check_motion(const ChannelSpec &spec, const MotionModel &motion)
{
    if (motion.target_path_index >= spec.paths.size())
        throw Error("motion: target_path_index out of range");
    if (motion.target_path_index == spec.strongest_path())
        throw Error("motion: must not target the strongest (static) path");
    if (!(motion.rate_hz > 0.0 && motion.rate_hz < 1.0))
        throw Error("motion: rate_hz must lie in (0, 1)");
    if (motion.delay_amplitude_s < 0.0)
        throw Error("motion: delay_amplitude_s must be non-negative");
    if (motion.gain_amplitude < 0.0 || motion.gain_amplitude >= 1.0)
        throw Error("motion: gain_amplitude must lie in [0, 1)");
}

void check_times(const std::vector<double> &frame_times)
{
    for (std::size_t i = 1; i < frame_times.size(); i++)
        if (!(frame_times[i] > frame_times[i - 1]))
            throw Error("frame_times must be strictly increasing");
}

} // namespace

std::vector<TraceEntry> respiration_trace(const ChannelSpec &spec, const MotionModel &motion,
                                          const std::vector<double> &frame_times,
                                          const DistortionRanges &ranges, std::uint64_t seed,
                                          double noise_std)
{
    spec.validate();
    check_motion(spec, motion);
    check_times(frame_times);

    std::vector<TraceEntry> out(frame_times.size());
    parallel_for(frame_times.size(),
                 [&](std::size_t i)
                 {
                     Rng rng = Rng::substream(seed, i);
                     DistortionDraw draw = ranges.sample(rng);
                     ChannelSpec spec_t = spec_at_time(spec, motion, frame_times[i]);
                     out[i].frame = synth_csi(spec_t, draw, noise_std, rng, frame_times[i]);
                     out[i].draw = draw;
                     out[i].spec_at_t = std::move(spec_t);
                 });
    return out;
}

std::pair<std::vector<TraceEntry>, std::vector<TraceEntry>>
two_antenna_trace(const ChannelSpec &spec_a, const ChannelSpec &spec_b, const MotionModel &motion,
                  const std::vector<double> &frame_times, const DistortionRanges &ranges,
                  std::uint64_t seed, double noise_std, bool shared_draws)
{
    spec_a.validate();
    spec_b.validate();
    check_motion(spec_a, motion);
    check_motion(spec_b, motion);
    check_times(frame_times);

    std::vector<TraceEntry> ant_a(frame_times.size());
    std::vector<TraceEntry> ant_b(frame_times.size());
    parallel_for(frame_times.size(),
                 [&](std::size_t i)
                 {
                     double t = frame_times[i];
                     Rng rng_a = Rng::substream(seed, 2 * i);
                     Rng rng_b = Rng::substream(seed, 2 * i + 1);
                     DistortionDraw draw_a = ranges.sample(rng_a);
                     DistortionDraw draw_b = shared_draws ? draw_a : ranges.sample(rng_b);
                     ChannelSpec at_a = spec_at_time(spec_a, motion, t);
                     ChannelSpec at_b = spec_at_time(spec_b, motion, t);
                     ant_a[i] = {synth_csi(at_a, draw_a, noise_std, rng_a, t), draw_a, std::move(at_a)};
                     ant_b[i] = {synth_csi(at_b, draw_b, noise_std, rng_b, t), draw_b, std::move(at_b)};
                 });
    return {std::move(ant_a), std::move(ant_b)};
}

} // namespace domino
