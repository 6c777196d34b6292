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
// Binary CSI trace persistence. Little-endian layout, version 1:
//
//   magic "DCSI" | version u16 | flags u16 | n_fft u32 | delta_f_hz f64
//   | n_active u32 | active u32[n_active] | carrier_hz f64
//   | n_antennas u32 | n_frames u64
//   | per frame: timestamp f64, per antenna: n_active × (re f64, im f64)
//   | if flags bit 0: per frame: rate_bpm f64,
//                     per antenna: beta f64, theta f64, epsilon f64
//
// All floats must be finite; the round trip is bit-exact. Real captures can
// be bridged by emitting this header and record layout.

#ifndef DOMINO_TRACE_HPP
#define DOMINO_TRACE_HPP

#include "domino/channel_model.hpp"
#include "domino/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace domino
{

inline constexpr std::uint16_t kTraceVersion = 1;

// Per-frame truth recorded by the simulator: the modulation rate and each
// antenna's distortion triple.
struct TraceGroundTruth
{
    std::vector<double> rate_bpm;      // one per frame
    std::vector<DistortionDraw> draws; // frame-major: frame × n_antennas + antenna
};

struct TraceFile
{
    std::shared_ptr<const SubcarrierLayout> layout;
    double carrier_hz = 0.0;
    int n_antennas = 1;
    std::vector<double> timestamps; // one per frame, seconds

    // Row frame × n_antennas + antenna holds that antenna's active-subcarrier
    // values for the frame.
    Eigen::MatrixXcd data;

    std::optional<TraceGroundTruth> ground_truth;

    std::size_t n_frames() const { return timestamps.size(); }

    CsiFrame frame(std::size_t frame_idx, int antenna = 0) const;
    std::vector<CsiFrame> antenna_frames(int antenna) const;

    // Throws IoError when the pieces disagree or any value is non-finite.
    void validate() const;
};

void write_trace(const TraceFile &trace, const std::string &path);

// Throws IoError on unreadable, truncated, or malformed input.
TraceFile read_trace(const std::string &path);

} // namespace domino

#endif
