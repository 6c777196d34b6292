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

#ifndef DOMINO_FFT_HPP
#define DOMINO_FFT_HPP

#include <complex>
#include <vector>

namespace domino::fft
{

// Unnormalized inverse DFT, out[n] = Σ_k in[k] e^{+j2πkn/N}. Plan creation
// is serialized internally; calls are safe from multiple threads.
void idft(const std::vector<std::complex<double>> &in, std::vector<std::complex<double>> &out);

// Real-to-complex forward DFT of length n (half spectrum, n/2 + 1 bins).
void rdft(const std::vector<double> &in, std::vector<std::complex<double>> &out);

} // namespace domino::fft

#endif
