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

#ifndef DOMINO_LAYOUT_HPP
#define DOMINO_LAYOUT_HPP

#include <memory>
#include <vector>

namespace domino
{

// OFDM subcarrier layout: DFT length N, spacing, and the active subset 𝒦
// actually reported by the receiver (guards and DC are absent).
struct SubcarrierLayout
{
    int n_fft = 0;
    double delta_f_hz = 0.0;
    std::vector<int> active; // sorted unique DFT indices in [0, n_fft)

    // Tap spacing T_s = 1 / (N · Δf).
    double ts() const
    {
        return 1.0 / (static_cast<double>(n_fft) * delta_f_hz);
    }

    // DFT index folded to the signed baseband index k̃ ∈ [−N/2, N/2).
    int signed_index(int k) const
    {
        return k < n_fft / 2 ? k : k - n_fft;
    }

    // Baseband frequency f_k = k̃ · Δf of subcarrier k.
    double baseband_hz(int k) const
    {
        return signed_index(k) * delta_f_hz;
    }

    std::size_t n_active() const
    {
        return active.size();
    }

    bool operator==(const SubcarrierLayout &o) const
    {
        return n_fft == o.n_fft && delta_f_hz == o.delta_f_hz && active == o.active;
    }

    // Throws domino::Error if the invariants do not hold.
    void validate() const;

    // Desk-scale default: N = 256 at 625 kHz spacing (160 MHz span),
    // 234 active subcarriers with DC null and 10-bin edge guards.
    static SubcarrierLayout desk_default();
};

std::shared_ptr<const SubcarrierLayout> make_desk_layout();

// Candidate delay support 𝓛 for LS CIR recovery.
struct TapSet
{
    std::vector<int> taps; // sorted unique in [0, n_fft)

    std::size_t size() const
    {
        return taps.size();
    }

    bool operator==(const TapSet &o) const
    {
        return taps == o.taps;
    }

    void validate(int n_fft) const;

    // Contiguous window [0, l_max).
    static TapSet first(int l_max);
};

} // namespace domino

#endif
