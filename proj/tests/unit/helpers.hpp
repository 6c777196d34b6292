// SPDX-License-Identifier: Apache-2.0
//
// domino: hardware distortion compensation for WiFi channel sounding
// Copyright (C) 2026 the domino authors

#ifndef DOMINO_TESTS_HELPERS_HPP
#define DOMINO_TESTS_HELPERS_HPP

#include <domino/channel_model.hpp>
#include <domino/cir_estimation.hpp>
#include <domino/layout.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>

#include <unistd.h>

namespace dt
{

inline std::shared_ptr<const domino::SubcarrierLayout> desk()
{
    static auto layout = domino::make_desk_layout();
    return layout;
}

inline const domino::LsOperator &desk_op()
{
    static domino::LsOperator op = domino::build_ls_operator(
        desk(), std::make_shared<const domino::TapSet>(domino::TapSet::first(32)));
    return op;
}

// Static three-path channel matching the shipped desk preset.
inline domino::ChannelSpec desk_channel()
{
    auto layout = desk();
    const double ts = layout->ts();
    domino::ChannelSpec spec;
    spec.layout = layout;
    spec.carrier_hz = 5.25e9;
    spec.paths = {
        {std::polar(1.0, 0.0), 4.2 * ts},
        {std::polar(0.45, 110.0 * M_PI / 180.0), 8.75 * ts},
        {std::polar(0.25, 205.0 * M_PI / 180.0), 14.1 * ts},
    };
    return spec;
}

// Scratch directory tied to the test process, removed on destruction.
class TempDir
{
public:
    TempDir()
    {
        path_ = std::filesystem::temp_directory_path() /
                ("domino_test_" + std::to_string(counter_++) + "_" +
                 std::to_string(static_cast<unsigned long>(::getpid())));
        std::filesystem::create_directories(path_);
    }

    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    const std::filesystem::path &path() const { return path_; }

    std::string file(const std::string &name) const { return (path_ / name).string(); }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

} // namespace dt

#endif
