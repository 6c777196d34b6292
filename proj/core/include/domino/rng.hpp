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

#ifndef DOMINO_RNG_HPP
#define DOMINO_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace domino
{

// SplitMix64 generator. The standard library distributions are
// implementation-defined, which would break the byte-identical trace
// requirement across toolchains, so uniform and Gaussian sampling are
// spelled out here.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : state(seed) {}

    // Independent stream for one unit of parallel work. Derivation depends
    // only on (seed, index), so parallel and serial trace generation agree.
    static Rng substream(std::uint64_t seed, std::uint64_t index)
    {
        return Rng(mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    std::uint64_t next_u64()
    {
        state += 0x9E3779B97F4A7C15ULL;
        return mix(state);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    // Box-Muller pair of independent standard Gaussians.
    std::pair<double, double> normal_pair()
    {
        double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

    double normal()
    {
        return normal_pair().first;
    }

    // Circularly symmetric complex Gaussian, std per real component.
    std::complex<double> normal_complex(double std_per_component)
    {
        auto [re, im] = normal_pair();
        return {std_per_component * re, std_per_component * im};
    }

  private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state;
};

} // namespace domino

#endif
