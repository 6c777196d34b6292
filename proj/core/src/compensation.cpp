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

#include "domino/compensation.hpp"

#include "domino/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace domino
{

CsiFrame apply_delay_shift(const CsiFrame &frame, double shift_taps)
{
    const auto &layout = *frame.layout;
    const std::size_t n_active = layout.active.size();
    if (static_cast<std::size_t>(frame.values.size()) != n_active)
        throw LayoutMismatch("apply_delay_shift: frame length does not match layout");

    CsiFrame out;
    out.layout = frame.layout;
    out.timestamp_s = frame.timestamp_s;
    out.values.resize(frame.values.size());

    const double w = 2.0 * std::numbers::pi * shift_taps / layout.n_fft;
    for (std::size_t i = 0; i < n_active; ++i)
    {
        const double phase = w * layout.signed_index(layout.active[i]);
        out.values[static_cast<Eigen::Index>(i)] =
            frame.values[static_cast<Eigen::Index>(i)] * cplx(std::cos(phase), std::sin(phase));
    }
    return out;
}

namespace
{

double median_magnitude(const Eigen::VectorXcd &taps)
{
    std::vector<double> mags(static_cast<std::size_t>(taps.size()));
    for (Eigen::Index i = 0; i < taps.size(); ++i)
        mags[static_cast<std::size_t>(i)] = std::abs(taps[i]);
    const std::size_t mid = mags.size() / 2;
    std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid), mags.end());
    double median = mags[mid];
    if (mags.size() % 2 == 0)
    {
        const double lower =
            *std::max_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (median + lower);
    }
    return median;
}

// |h[0]| of the frame shifted by −e: the band-limited tap magnitude at
// fractional position e. Exact for a single path, and within 0.05 taps of
// the true optimum for dominant-path channels; the LS first row is not used
// here because its deconvolution sidelobes bias the continuous argmax by up
// to a third of a tap.
//
// The phase is linear in the signed subcarrier index, so consecutive indices
// are reached by one complex multiply; the trig recurrence restarts at every
// gap in the active set, which bounds its rounding drift well below the
// search tolerances.
class Tap0Objective
{
  public:
    explicit Tap0Objective(const CsiFrame &frame) : values_(frame.values)
    {
        const auto &layout = *frame.layout;
        signed_.resize(layout.active.size());
        for (std::size_t i = 0; i < layout.active.size(); ++i)
            signed_[i] = layout.signed_index(layout.active[i]);
        unit_ = 2.0 * std::numbers::pi / layout.n_fft;
    }

    double operator()(double e) const
    {
        const double u = -unit_ * e;
        const cplx step(std::cos(u), std::sin(u));
        cplx cur(std::cos(u * signed_[0]), std::sin(u * signed_[0]));
        cplx acc = values_[0] * cur;
        for (std::size_t i = 1; i < signed_.size(); ++i)
        {
            if (signed_[i] - signed_[i - 1] == 1)
                cur *= step;
            else
            {
                const double phase = u * signed_[i];
                cur = cplx(std::cos(phase), std::sin(phase));
            }
            acc += values_[static_cast<Eigen::Index>(i)] * cur;
        }
        return std::abs(acc) / static_cast<double>(signed_.size());
    }

  private:
    const Eigen::VectorXcd &values_;
    std::vector<int> signed_;
    double unit_;
};

template <typename F> double golden_max(const F &f, double lo, double hi, double tol)
{
    constexpr double inv_phi = 0.61803398874989484820;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol)
    {
        if (f1 < f2)
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        else
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Damped Newton steps on a three-point parabola, driving p to the stationary
// point of f. Golden section alone stops anywhere inside its final bracket;
// re-estimating on an already aligned frame would then return a leftover of
// up to tol_taps instead of zero, which breaks idempotence of the pipeline.
template <typename F> double vertex_polish(const F &f, double p, double delta, int iters)
{
    for (int it = 0; it < iters; ++it)
    {
        const double fm = f(p - delta);
        const double f0 = f(p);
        const double fp = f(p + delta);
        const double den = fm - 2.0 * f0 + fp;
        if (!(den < 0.0))
            break;
        double step = 0.5 * delta * (fm - fp) / den;
        step = std::clamp(step, -delta, delta);
        p += step;
        if (std::abs(step) < 1e-13)
            break;
    }
    return p;
}

} // namespace

double cir_noise_floor(const Eigen::VectorXcd &taps, const SearchConfig &cfg)
{
    if (taps.size() == 0)
        throw EmptySignal("cir_noise_floor: empty CIR");
    return std::max(cfg.noise_floor_rel * median_magnitude(taps), cfg.noise_floor_abs);
}

AlignmentResult refine_alignment(const CsiFrame &frame, int n0, const SearchConfig &cfg)
{
    if (!frame.layout)
        throw LayoutMismatch("refine_alignment: frame has no layout");
    if (frame.layout->active.empty() ||
        static_cast<std::size_t>(frame.values.size()) != frame.layout->active.size())
        throw LayoutMismatch("refine_alignment: frame length does not match layout");

    const int radius = cfg.search_radius > 0 ? cfg.search_radius : frame.layout->n_fft / 4;
    if (std::abs(n0) > radius)
        throw EmptySignal("refine_alignment: coarse peak outside the search radius");

    const Tap0Objective objective(frame);
    const double lo = -static_cast<double>(n0) - 1.0;
    const double hi = -static_cast<double>(n0) + 1.0;
    double e = golden_max(objective, lo, hi, cfg.tol_taps);
    e = vertex_polish(objective, e, cfg.polish_delta, cfg.polish_iters);

    AlignmentResult result;
    result.epsilon_est = e;
    result.n0 = n0;
    const double peak = objective(e);
    result.peak_power = peak * peak;
    return result;
}

AlignmentResult estimate_alignment(const CsiFrame &frame, const LsOperator &op, const SearchConfig &cfg)
{
    if (!(frame.layout && *frame.layout == *op.layout))
        throw LayoutMismatch("estimate_alignment: frame layout does not match operator layout");

    const Cir coarse = estimate_cir_ls(op, frame);
    const double floor = cir_noise_floor(coarse.taps, cfg);

    int n0 = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < coarse.taps.size(); ++i)
    {
        const double mag = std::abs(coarse.taps[i]);
        if (mag > best)
        {
            best = mag;
            n0 = op.tapset->taps[static_cast<std::size_t>(i)];
        }
    }
    if (best <= floor)
        throw EmptySignal("estimate_alignment: no tap above the noise floor");

    AlignmentResult result = refine_alignment(frame, n0, cfg);

    // A far off-grid dominant path splits across two taps, and a weaker path
    // plus truncation leakage can then win the argmax, leaving the refine
    // window in the wrong basin. The result must dominate every integer-tap
    // candidate, so rescan the tap grid and hop basins until it does.
    const Tap0Objective objective(frame);
    const int radius = cfg.search_radius > 0 ? cfg.search_radius : frame.layout->n_fft / 4;
    for (int hop = 0; hop < 4; ++hop)
    {
        int best_tap = -1;
        double best_val = std::sqrt(result.peak_power);
        for (int tap : op.tapset->taps)
        {
            if (tap > radius)
                continue;
            const double val = objective(-static_cast<double>(tap));
            if (val > best_val)
            {
                best_val = val;
                best_tap = tap;
            }
        }
        if (best_tap < 0)
            break;
        AlignmentResult alt = refine_alignment(frame, best_tap, cfg);
        alt.n0 = result.n0;
        if (alt.peak_power <= result.peak_power)
            break;
        result = alt;
    }
    return result;
}

Cir dominant_path_normalize(const Cir &cir, const SearchConfig &cfg)
{
    if (cir.taps.size() == 0)
        throw EmptySignal("dominant_path_normalize: empty CIR");

    const double floor = cir_noise_floor(cir.taps, cfg);
    if (cir.taps.cwiseAbs().maxCoeff() <= floor)
        throw EmptySignal("dominant_path_normalize: no tap above the noise floor");
    if (std::abs(cir.taps[0]) < floor)
        throw DominantTapTooWeak("dominant_path_normalize: tap 0 below the noise floor");

    Cir out;
    out.tapset = cir.tapset;
    out.ts = cir.ts;
    out.taps = cir.taps / cir.taps[0];
    out.taps[0] = cplx(1.0, 0.0);
    return out;
}

CompensatedFrame compensate_frame(const CsiFrame &frame, const LsOperator &op, const SearchConfig &cfg)
{
    CompensatedFrame out;
    out.alignment = estimate_alignment(frame, op, cfg);

    const CsiFrame aligned = apply_delay_shift(frame, -out.alignment.epsilon_est);
    const Cir cir = estimate_cir_ls(op, aligned);
    out.cir_norm = dominant_path_normalize(cir, cfg);

    if (cfg.with_csi_norm)
        out.csi_norm = aligned.values / cir.taps[0];
    return out;
}

Eigen::VectorXcd resynthesize(const LsOperator &op, const Cir &cir)
{
    const auto &layout = *op.layout;
    const auto &taps = op.tapset->taps;
    if (static_cast<std::size_t>(cir.taps.size()) != taps.size())
        throw LengthMismatch("resynthesize: CIR length does not match operator tap set");

    const double root_n = std::sqrt(static_cast<double>(layout.n_fft));
    Eigen::VectorXcd out(static_cast<Eigen::Index>(layout.active.size()));
    for (std::size_t i = 0; i < layout.active.size(); ++i)
    {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < taps.size(); ++j)
        {
            const double phase =
                -2.0 * std::numbers::pi * layout.active[i] * taps[j] / static_cast<double>(layout.n_fft);
            acc += cir.taps[static_cast<Eigen::Index>(j)] * cplx(std::cos(phase), std::sin(phase));
        }
        out[static_cast<Eigen::Index>(i)] = acc / root_n;
    }
    return out;
}

double AlignmentSmoother::apply(double epsilon_est)
{
    if (!primed_)
    {
        prev_ = epsilon_est;
        primed_ = true;
        return epsilon_est;
    }
    prev_ = std::clamp(epsilon_est, prev_ - max_jump_, prev_ + max_jump_);
    return prev_;
}

} // namespace domino
