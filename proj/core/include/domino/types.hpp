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

#ifndef DOMINO_TYPES_HPP
#define DOMINO_TYPES_HPP

#include "domino/layout.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>

namespace domino
{

using cplx = std::complex<double>;

// One packet's channel response on the active subcarriers.
struct CsiFrame
{
    std::shared_ptr<const SubcarrierLayout> layout;
    Eigen::VectorXcd values; // one entry per layout->active index
    double timestamp_s = 0.0;
};

// Channel impulse response over a tap set, tap spacing ts seconds.
struct Cir
{
    std::shared_ptr<const TapSet> tapset;
    Eigen::VectorXcd taps;
    double ts = 0.0;
};

} // namespace domino

#endif
