// SPDX-License-Identifier: Apache-2.0
//
// domino: hardware distortion compensation for WiFi channel sounding
// Copyright (C) 2026 the domino authors

#include <doctest.h>

#include "helpers.hpp"

#include <domino/errors.hpp>
#include <domino/rng.hpp>
#include <domino/trace.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

using namespace domino;

namespace
{

TraceFile sample_trace(int n_antennas, bool with_gt)
{
    SubcarrierLayout layout;
    layout.n_fft = 8;
    layout.delta_f_hz = 625e3;
    layout.active = {1, 2, 3};

    TraceFile trace;
    trace.layout = std::make_shared<const SubcarrierLayout>(layout);
    trace.carrier_hz = 5.25e9;
    trace.n_antennas = n_antennas;
    trace.timestamps = {0.0, 0.02, 0.04};
    trace.data.resize(3 * n_antennas, 3);
    Rng rng(1);
    for (Eigen::Index r = 0; r < trace.data.rows(); ++r)
        for (Eigen::Index c = 0; c < trace.data.cols(); ++c)
            trace.data(r, c) = cplx(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));

    if (with_gt)
    {
        TraceGroundTruth gt;
        for (std::size_t f = 0; f < trace.timestamps.size(); ++f)
        {
            gt.rate_bpm.push_back(15.0 + static_cast<double>(f));
            for (int a = 0; a < n_antennas; ++a)
                gt.draws.push_back(
                    DistortionDraw{1.0 + 0.1 * static_cast<double>(a), 0.2, 1e-9});
        }
        trace.ground_truth = gt;
    }
    return trace;
}

std::vector<unsigned char> slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                      std::istreambuf_iterator<char>());
}

void dump(const std::string &path, const std::vector<unsigned char> &bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_SUITE("trace")
{

TEST_CASE("round trip preserves every bit")
{
    dt::TempDir dir;
    for (int antennas : {1, 2})
        for (bool gt : {false, true})
        {
            TraceFile trace = sample_trace(antennas, gt);
            std::string path = dir.file("t.dcsi");
            write_trace(trace, path);
            TraceFile back = read_trace(path);

            CHECK(*back.layout == *trace.layout);
            CHECK(back.carrier_hz == trace.carrier_hz);
            CHECK(back.n_antennas == trace.n_antennas);
            CHECK(back.timestamps == trace.timestamps);
            REQUIRE(back.data.rows() == trace.data.rows());
            CHECK((back.data - trace.data).cwiseAbs().maxCoeff() == 0.0);
            CHECK(back.ground_truth.has_value() == gt);
            if (gt)
            {
                CHECK(back.ground_truth->rate_bpm == trace.ground_truth->rate_bpm);
                REQUIRE(back.ground_truth->draws.size() == trace.ground_truth->draws.size());
                for (std::size_t i = 0; i < back.ground_truth->draws.size(); ++i)
                {
                    CHECK(back.ground_truth->draws[i].beta == trace.ground_truth->draws[i].beta);
                    CHECK(back.ground_truth->draws[i].theta == trace.ground_truth->draws[i].theta);
                    CHECK(back.ground_truth->draws[i].epsilon ==
                          trace.ground_truth->draws[i].epsilon);
                }
            }
        }
}

TEST_CASE("rewrites are byte-identical")
{
    dt::TempDir dir;
    TraceFile trace = sample_trace(2, true);
    write_trace(trace, dir.file("a.dcsi"));
    write_trace(read_trace(dir.file("a.dcsi")), dir.file("b.dcsi"));
    CHECK(slurp(dir.file("a.dcsi")) == slurp(dir.file("b.dcsi")));
}

TEST_CASE("the header starts with the magic and version")
{
    dt::TempDir dir;
    write_trace(sample_trace(1, false), dir.file("t.dcsi"));
    auto bytes = slurp(dir.file("t.dcsi"));
    REQUIRE(bytes.size() > 8);
    CHECK(bytes[0] == 'D');
    CHECK(bytes[1] == 'C');
    CHECK(bytes[2] == 'S');
    CHECK(bytes[3] == 'I');
    CHECK(bytes[4] == 1); // version u16, little endian
    CHECK(bytes[5] == 0);
    CHECK(bytes[6] == 0); // flags: no ground truth
    CHECK(bytes[7] == 0);

    write_trace(sample_trace(1, true), dir.file("gt.dcsi"));
    auto gt_bytes = slurp(dir.file("gt.dcsi"));
    CHECK(gt_bytes[6] == 1); // flags bit 0: ground truth present
}

TEST_CASE("frame accessors slice per antenna")
{
    TraceFile trace = sample_trace(2, false);
    CsiFrame f = trace.frame(1, 1);
    CHECK(f.timestamp_s == trace.timestamps[1]);
    CHECK(f.values.size() == 3);
    CHECK(f.values[0] == trace.data(1 * 2 + 1, 0));

    auto all = trace.antenna_frames(1);
    REQUIRE(all.size() == 3);
    CHECK(all[2].values[2] == trace.data(2 * 2 + 1, 2));

    CHECK_THROWS_AS(trace.frame(0, 2), IoError);
    CHECK_THROWS_AS(trace.frame(9, 0), IoError);
}

TEST_CASE("unreadable paths and bad magic are IoError")
{
    dt::TempDir dir;
    CHECK_THROWS_AS(read_trace(dir.file("missing.dcsi")), IoError);

    write_trace(sample_trace(1, false), dir.file("t.dcsi"));
    auto bytes = slurp(dir.file("t.dcsi"));
    bytes[0] = 'X';
    dump(dir.file("bad.dcsi"), bytes);
    CHECK_THROWS_AS(read_trace(dir.file("bad.dcsi")), IoError);
}

TEST_CASE("unknown versions and flags are rejected")
{
    dt::TempDir dir;
    write_trace(sample_trace(1, false), dir.file("t.dcsi"));
    auto bytes = slurp(dir.file("t.dcsi"));

    auto version2 = bytes;
    version2[4] = 2;
    dump(dir.file("v2.dcsi"), version2);
    CHECK_THROWS_AS(read_trace(dir.file("v2.dcsi")), IoError);

    auto flagged = bytes;
    flagged[6] = 0x02;
    dump(dir.file("flag.dcsi"), flagged);
    CHECK_THROWS_AS(read_trace(dir.file("flag.dcsi")), IoError);
}

TEST_CASE("truncated and padded files are rejected")
{
    dt::TempDir dir;
    write_trace(sample_trace(2, true), dir.file("t.dcsi"));
    auto bytes = slurp(dir.file("t.dcsi"));

    auto truncated = bytes;
    truncated.resize(truncated.size() - 5);
    dump(dir.file("short.dcsi"), truncated);
    CHECK_THROWS_AS(read_trace(dir.file("short.dcsi")), IoError);

    auto padded = bytes;
    padded.push_back(0);
    dump(dir.file("long.dcsi"), padded);
    CHECK_THROWS_AS(read_trace(dir.file("long.dcsi")), IoError);

    auto header_only = bytes;
    header_only.resize(10);
    dump(dir.file("header.dcsi"), header_only);
    CHECK_THROWS_AS(read_trace(dir.file("header.dcsi")), IoError);
}

TEST_CASE("non-finite payloads never pass")
{
    dt::TempDir dir;
    TraceFile trace = sample_trace(1, false);
    trace.data(0, 0) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(write_trace(trace, dir.file("nan.dcsi")), IoError);

    // Corrupt a stored double on disk: the first timestamp sits right after
    // the header (4+2+2+4+8+4 + 3×4 + 8+4+8 = 56 bytes).
    TraceFile good = sample_trace(1, false);
    write_trace(good, dir.file("t.dcsi"));
    auto bytes = slurp(dir.file("t.dcsi"));
    const std::size_t off = 56;
    const std::uint64_t nan_bits = 0x7ff8000000000000ull;
    for (int i = 0; i < 8; ++i)
        bytes[off + static_cast<std::size_t>(i)] =
            static_cast<unsigned char>((nan_bits >> (8 * i)) & 0xff);
    dump(dir.file("corrupt.dcsi"), bytes);
    CHECK_THROWS_AS(read_trace(dir.file("corrupt.dcsi")), IoError);
}

TEST_CASE("validate rejects inconsistent in-memory traces")
{
    TraceFile trace = sample_trace(2, true);
    CHECK_NOTHROW(trace.validate());

    TraceFile bad = trace;
    bad.data.conservativeResize(5, 3);
    CHECK_THROWS_AS(bad.validate(), IoError);

    bad = trace;
    bad.ground_truth->rate_bpm.pop_back();
    CHECK_THROWS_AS(bad.validate(), IoError);

    bad = trace;
    bad.n_antennas = 0;
    CHECK_THROWS_AS(bad.validate(), IoError);

    bad = trace;
    bad.timestamps[2] = bad.timestamps[1]; // not strictly increasing
    CHECK_THROWS_AS(bad.validate(), IoError);

    bad = trace;
    bad.layout.reset();
    CHECK_THROWS_AS(bad.validate(), IoError);
}

} // TEST_SUITE
