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

#include "domino/baselines.hpp"

#include "domino/errors.hpp"
#include "domino/layout.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace domino
{

std::string scheme_name(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::domino:
        return "domino";
    case Scheme::domino_idft:
        return "domino-idft";
    case Scheme::csi_ratio:
        return "csi-ratio";
    case Scheme::double_ratio:
        return "double-ratio";
    case Scheme::raw:
        return "raw";
    }
    throw ConfigError("scheme_name: invalid scheme tag");
}

Scheme parse_scheme(const std::string &name)
{
    if (name == "domino")
        return Scheme::domino;
    if (name == "domino-idft")
        return Scheme::domino_idft;
    if (name == "csi-ratio")
        return Scheme::csi_ratio;
    if (name == "double-ratio")
        return Scheme::double_ratio;
    if (name == "raw")
        return Scheme::raw;
    throw ConfigError("unknown scheme '" + name +
                      "' (expected domino, domino-idft, csi-ratio, double-ratio, or raw)");
}

namespace
{

void check_same_layout(const std::vector<CsiFrame> &frames, const char *where)
{
    if (frames.empty())
        throw LengthMismatch(std::string(where) + ": no frames");
    for (const auto &f : frames)
    {
        if (!f.layout || !(*f.layout == *frames.front().layout))
            throw LayoutMismatch(std::string(where) + ": frames disagree on layout");
        if (static_cast<std::size_t>(f.values.size()) != f.layout->active.size())
            throw LayoutMismatch(std::string(where) + ": frame length does not match layout");
    }
}

double frame_median_magnitude(const Eigen::VectorXcd &values)
{
    std::vector<double> mags(static_cast<std::size_t>(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i)
        mags[static_cast<std::size_t>(i)] = std::abs(values[i]);
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

} // namespace

RatioSeries csi_ratio(const std::vector<CsiFrame> &frames_a, const std::vector<CsiFrame> &frames_b)
{
    if (frames_a.size() != frames_b.size())
        throw LengthMismatch("csi_ratio: antenna streams differ in length");
    check_same_layout(frames_a, "csi_ratio");
    check_same_layout(frames_b, "csi_ratio");
    if (!(*frames_a.front().layout == *frames_b.front().layout))
        throw LayoutMismatch("csi_ratio: antenna streams disagree on layout");

    const Eigen::Index n_frames = static_cast<Eigen::Index>(frames_a.size());
    const Eigen::Index n_active = frames_a.front().values.size();

    RatioSeries out;
    out.scheme = Scheme::csi_ratio;
    out.values.setZero(n_frames, n_active);
    out.mask.setConstant(n_frames, n_active, false);

    for (Eigen::Index t = 0; t < n_frames; ++t)
    {
        const auto &a = frames_a[static_cast<std::size_t>(t)];
        const auto &b = frames_b[static_cast<std::size_t>(t)];
        if (a.timestamp_s != b.timestamp_s)
            throw LengthMismatch("csi_ratio: antenna streams are not timestamp-paired");

        const double floor = kGuardFloorRel * frame_median_magnitude(b.values);
        for (Eigen::Index k = 0; k < n_active; ++k)
        {
            if (std::abs(b.values[k]) < floor)
                continue;
            out.values(t, k) = a.values[k] / b.values[k];
            out.mask(t, k) = true;
        }
    }
    return out;
}

RatioSeries double_ratio(const std::vector<CsiFrame> &frames, int ref_subcarrier)
{
    check_same_layout(frames, "double_ratio");
    const auto &layout = *frames.front().layout;

    Eigen::Index ref_col = -1;
    for (std::size_t i = 0; i < layout.active.size(); ++i)
    {
        if (layout.active[i] == ref_subcarrier)
        {
            ref_col = static_cast<Eigen::Index>(i);
            break;
        }
    }
    if (ref_col < 0)
        throw RefNotActive("double_ratio: subcarrier " + std::to_string(ref_subcarrier) +
                           " is not in the active set");

    const Eigen::Index n_frames = static_cast<Eigen::Index>(frames.size());
    const Eigen::Index n_active = frames.front().values.size();

    RatioSeries out;
    out.scheme = Scheme::double_ratio;
    out.values.setZero(n_frames, n_active);
    out.mask.setConstant(n_frames, n_active, false);

    for (Eigen::Index t = 0; t < n_frames; ++t)
    {
        const auto &f = frames[static_cast<std::size_t>(t)];
        const double floor = kGuardFloorRel * frame_median_magnitude(f.values);
        const cplx ref = f.values[ref_col];
        if (std::abs(ref) < floor)
            continue;
        for (Eigen::Index k = 0; k < n_active; ++k)
        {
            if (k == ref_col)
                continue;
            out.values(t, k) = f.values[k] / ref;
            out.mask(t, k) = true;
        }
    }
    return out;
}

int default_ref_subcarrier(const std::vector<CsiFrame> &frames, std::size_t window)
{
    check_same_layout(frames, "default_ref_subcarrier");
    const auto &layout = *frames.front().layout;
    const std::size_t n = std::min(window == 0 ? frames.size() : window, frames.size());
    const Eigen::Index n_active = frames.front().values.size();

    Eigen::VectorXd mean_mag = Eigen::VectorXd::Zero(n_active);
    for (std::size_t t = 0; t < n; ++t)
        mean_mag += frames[t].values.cwiseAbs();

    Eigen::Index best = 0;
    mean_mag.maxCoeff(&best);
    return layout.active[static_cast<std::size_t>(best)];
}

RatioSeries raw_magnitude(const std::vector<CsiFrame> &frames)
{
    check_same_layout(frames, "raw_magnitude");

    const Eigen::Index n_frames = static_cast<Eigen::Index>(frames.size());
    const Eigen::Index n_active = frames.front().values.size();

    RatioSeries out;
    out.scheme = Scheme::raw;
    out.values.resize(n_frames, n_active);
    out.mask.setConstant(n_frames, n_active, true);
    for (Eigen::Index t = 0; t < n_frames; ++t)
        out.values.row(t) =
            frames[static_cast<std::size_t>(t)].values.cwiseAbs().cast<cplx>().transpose();
    return out;
}

} // namespace domino
