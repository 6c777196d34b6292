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

#include "domino/layout.hpp"

#include "domino/errors.hpp"

#include <numeric>

namespace domino
{

void SubcarrierLayout::validate() const
{
    if (n_fft <= 0)
        throw Error("layout: n_fft must be positive");
    if (delta_f_hz <= 0.0)
        throw Error("layout: delta_f_hz must be positive");
    if (active.empty())
        throw Error("layout: active subcarrier set is empty");
    int prev = -1;
    for (int k : active)
    {
        if (k < 0 || k >= n_fft)
            throw Error("layout: active index " + std::to_string(k) + " outside [0, n_fft)");
        if (k <= prev)
            throw Error("layout: active indices must be sorted and unique");
        prev = k;
    }
}

SubcarrierLayout SubcarrierLayout::desk_default()
{
    SubcarrierLayout l;
    l.n_fft = 256;
    l.delta_f_hz = 625e3;
    l.active.reserve(234);
    for (int k = 1; k <= 117; k++)
        l.active.push_back(k);
    for (int k = 139; k <= 255; k++)
        l.active.push_back(k);
    return l;
}

std::shared_ptr<const SubcarrierLayout> make_desk_layout()
{
    return std::make_shared<const SubcarrierLayout>(SubcarrierLayout::desk_default());
}

void TapSet::validate(int n_fft) const
{
    if (taps.empty())
        throw Error("tapset: empty");
    int prev = -1;
    for (int t : taps)
    {
        if (t < 0 || t >= n_fft)
            throw Error("tapset: tap index " + std::to_string(t) + " outside [0, n_fft)");
        if (t <= prev)
            throw Error("tapset: tap indices must be sorted and unique");
        prev = t;
    }
}

TapSet TapSet::first(int l_max)
{
    TapSet s;
    s.taps.resize(static_cast<std::size_t>(l_max));
    std::iota(s.taps.begin(), s.taps.end(), 0);
    return s;
}

} // namespace domino
