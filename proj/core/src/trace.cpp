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

#include "domino/trace.hpp"

#include "domino/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <string_view>
#include <vector>

namespace domino
{

namespace
{

class ByteWriter
{
  public:
    void bytes(const void *src, std::size_t n)
    {
        const auto *p = static_cast<const unsigned char *>(src);
        buf_.insert(buf_.end(), p, p + n);
    }

    void u16(std::uint16_t v)
    {
        const unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
        bytes(b, 2);
    }

    void u32(std::uint32_t v)
    {
        unsigned char b[4];
        for (int i = 0; i < 4; ++i)
            b[i] = static_cast<unsigned char>(v >> (8 * i));
        bytes(b, 4);
    }

    void u64(std::uint64_t v)
    {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i)
            b[i] = static_cast<unsigned char>(v >> (8 * i));
        bytes(b, 8);
    }

    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    const std::vector<unsigned char> &buffer() const { return buf_; }

  private:
    std::vector<unsigned char> buf_;
};

class ByteReader
{
  public:
    ByteReader(const unsigned char *begin, const unsigned char *end) : p_(begin), end_(end) {}

    void bytes(void *dst, std::size_t n)
    {
        if (static_cast<std::size_t>(end_ - p_) < n)
            throw IoError("trace file is truncated");
        auto *out = static_cast<unsigned char *>(dst);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = p_[i];
        p_ += n;
    }

    std::uint16_t u16()
    {
        unsigned char b[2];
        bytes(b, 2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }

    std::uint32_t u32()
    {
        unsigned char b[4];
        bytes(b, 4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i)
            v = (v << 8) | b[i];
        return v;
    }

    std::uint64_t u64()
    {
        unsigned char b[8];
        bytes(b, 8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i)
            v = (v << 8) | b[i];
        return v;
    }

    double f64_finite()
    {
        const double v = std::bit_cast<double>(u64());
        if (!std::isfinite(v))
            throw IoError("trace file contains a non-finite value");
        return v;
    }

    bool at_end() const { return p_ == end_; }

  private:
    const unsigned char *p_;
    const unsigned char *end_;
};

constexpr std::uint16_t kFlagGroundTruth = 1;

} // namespace

CsiFrame TraceFile::frame(std::size_t frame_idx, int antenna) const
{
    if (frame_idx >= n_frames())
        throw IoError("frame index out of range");
    if (antenna < 0 || antenna >= n_antennas)
        throw IoError("antenna index out of range");
    CsiFrame f;
    f.layout = layout;
    f.timestamp_s = timestamps[frame_idx];
    const Eigen::Index row =
        static_cast<Eigen::Index>(frame_idx) * n_antennas + antenna;
    f.values = data.row(row).transpose();
    return f;
}

std::vector<CsiFrame> TraceFile::antenna_frames(int antenna) const
{
    if (antenna < 0 || antenna >= n_antennas)
        throw IoError("antenna index out of range");
    std::vector<CsiFrame> out;
    out.reserve(n_frames());
    for (std::size_t i = 0; i < n_frames(); ++i)
        out.push_back(frame(i, antenna));
    return out;
}

void TraceFile::validate() const
{
    if (!layout)
        throw IoError("trace has no layout");
    layout->validate();
    if (!std::isfinite(carrier_hz) || carrier_hz <= 0.0)
        throw IoError("trace carrier frequency must be positive and finite");
    if (n_antennas < 1)
        throw IoError("trace needs at least one antenna");
    const Eigen::Index rows = static_cast<Eigen::Index>(n_frames()) * n_antennas;
    if (data.rows() != rows || data.cols() != static_cast<Eigen::Index>(layout->active.size()))
        throw IoError("trace record count does not match its header");
    for (double t : timestamps)
        if (!std::isfinite(t))
            throw IoError("trace timestamp is non-finite");
    for (std::size_t i = 1; i < timestamps.size(); ++i)
        if (!(timestamps[i] > timestamps[i - 1]))
            throw IoError("trace timestamps must be strictly increasing");
    if (!data.allFinite())
        throw IoError("trace data contains a non-finite value");
    if (ground_truth)
    {
        if (ground_truth->rate_bpm.size() != n_frames() ||
            ground_truth->draws.size() != n_frames() * static_cast<std::size_t>(n_antennas))
            throw IoError("trace ground truth does not match its header");
    }
}

void write_trace(const TraceFile &trace, const std::string &path)
{
    trace.validate();
    const auto &layout = *trace.layout;

    ByteWriter w;
    w.bytes("DCSI", 4);
    w.u16(kTraceVersion);
    w.u16(trace.ground_truth ? kFlagGroundTruth : 0);
    w.u32(static_cast<std::uint32_t>(layout.n_fft));
    w.f64(layout.delta_f_hz);
    w.u32(static_cast<std::uint32_t>(layout.active.size()));
    for (int k : layout.active)
        w.u32(static_cast<std::uint32_t>(k));
    w.f64(trace.carrier_hz);
    w.u32(static_cast<std::uint32_t>(trace.n_antennas));
    w.u64(trace.n_frames());

    for (std::size_t f = 0; f < trace.n_frames(); ++f)
    {
        w.f64(trace.timestamps[f]);
        for (int a = 0; a < trace.n_antennas; ++a)
        {
            const Eigen::Index row = static_cast<Eigen::Index>(f) * trace.n_antennas + a;
            for (Eigen::Index k = 0; k < trace.data.cols(); ++k)
            {
                w.f64(trace.data(row, k).real());
                w.f64(trace.data(row, k).imag());
            }
        }
    }

    if (trace.ground_truth)
    {
        const auto &gt = *trace.ground_truth;
        for (std::size_t f = 0; f < trace.n_frames(); ++f)
        {
            w.f64(gt.rate_bpm[f]);
            for (int a = 0; a < trace.n_antennas; ++a)
            {
                const auto &d = gt.draws[f * static_cast<std::size_t>(trace.n_antennas) +
                                         static_cast<std::size_t>(a)];
                w.f64(d.beta);
                w.f64(d.theta);
                w.f64(d.epsilon);
            }
        }
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    os.write(reinterpret_cast<const char *>(w.buffer().data()),
             static_cast<std::streamsize>(w.buffer().size()));
    if (!os)
        throw IoError("failed writing '" + path + "'");
}

TraceFile read_trace(const std::string &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path + "' for reading");
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
    ByteReader r(raw.data(), raw.data() + raw.size());

    char magic[4];
    r.bytes(magic, 4);
    if (std::string_view(magic, 4) != "DCSI")
        throw IoError("'" + path + "' is not a trace file (bad magic)");
    const std::uint16_t version = r.u16();
    if (version != kTraceVersion)
        throw IoError("unsupported trace version " + std::to_string(version));
    const std::uint16_t flags = r.u16();
    if ((flags & ~kFlagGroundTruth) != 0)
        throw IoError("trace file has unknown flags set");

    auto layout = std::make_shared<SubcarrierLayout>();
    layout->n_fft = static_cast<int>(r.u32());
    layout->delta_f_hz = r.f64_finite();
    const std::uint32_t n_active = r.u32();
    layout->active.resize(n_active);
    for (std::uint32_t i = 0; i < n_active; ++i)
        layout->active[i] = static_cast<int>(r.u32());

    TraceFile trace;
    trace.carrier_hz = r.f64_finite();
    trace.n_antennas = static_cast<int>(r.u32());
    const std::uint64_t n_frames = r.u64();
    trace.layout = layout;

    if (trace.n_antennas < 1)
        throw IoError("trace header declares no antennas");
    try
    {
        layout->validate();
    }
    catch (const Error &e)
    {
        throw IoError(std::string("trace header carries an invalid layout: ") + e.what());
    }

    trace.timestamps.resize(n_frames);
    trace.data.resize(static_cast<Eigen::Index>(n_frames) * trace.n_antennas,
                      static_cast<Eigen::Index>(n_active));
    for (std::uint64_t f = 0; f < n_frames; ++f)
    {
        trace.timestamps[f] = r.f64_finite();
        for (int a = 0; a < trace.n_antennas; ++a)
        {
            const Eigen::Index row = static_cast<Eigen::Index>(f) * trace.n_antennas + a;
            for (std::uint32_t k = 0; k < n_active; ++k)
            {
                const double re = r.f64_finite();
                const double im = r.f64_finite();
                trace.data(row, static_cast<Eigen::Index>(k)) = cplx(re, im);
            }
        }
    }

    if (flags & kFlagGroundTruth)
    {
        TraceGroundTruth gt;
        gt.rate_bpm.resize(n_frames);
        gt.draws.resize(n_frames * static_cast<std::uint64_t>(trace.n_antennas));
        for (std::uint64_t f = 0; f < n_frames; ++f)
        {
            gt.rate_bpm[f] = r.f64_finite();
            for (int a = 0; a < trace.n_antennas; ++a)
            {
                auto &d = gt.draws[f * static_cast<std::uint64_t>(trace.n_antennas) +
                                   static_cast<std::uint64_t>(a)];
                d.beta = r.f64_finite();
                d.theta = r.f64_finite();
                d.epsilon = r.f64_finite();
            }
        }
        trace.ground_truth = std::move(gt);
    }

    if (!r.at_end())
        throw IoError("trace file has trailing bytes");
    trace.validate();
    return trace;
}

} // namespace domino
