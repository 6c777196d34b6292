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

#include "domino/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace domino::fft
{

namespace
{

// FFTW plan creation is not thread safe; execution with the new-array
// interface is. Plans are cached per transform size.
std::mutex plan_mutex;

fftw_plan idft_plan(int n)
{
    static std::map<int, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::vector<std::complex<double>> tmp_in(n), tmp_out(n);
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex *>(tmp_in.data()),
                                   reinterpret_cast<fftw_complex *>(tmp_out.data()), FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[n] = p;
    return p;
}

fftw_plan rdft_plan(int n)
{
    static std::map<int, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::vector<double> tmp_in(n);
    std::vector<std::complex<double>> tmp_out(n / 2 + 1);
    fftw_plan p = fftw_plan_dft_r2c_1d(n, tmp_in.data(),
                                       reinterpret_cast<fftw_complex *>(tmp_out.data()),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[n] = p;
    return p;
}

} // namespace

void idft(const std::vector<std::complex<double>> &in, std::vector<std::complex<double>> &out)
{
    int n = static_cast<int>(in.size());
    out.resize(in.size());
    fftw_plan p = idft_plan(n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex *>(const_cast<std::complex<double> *>(in.data())),
                     reinterpret_cast<fftw_complex *>(out.data()));
}

void rdft(const std::vector<double> &in, std::vector<std::complex<double>> &out)
{
    int n = static_cast<int>(in.size());
    out.resize(static_cast<std::size_t>(n) / 2 + 1);
    fftw_plan p = rdft_plan(n);
    fftw_execute_dft_r2c(p, const_cast<double *>(in.data()),
                         reinterpret_cast<fftw_complex *>(out.data()));
}

} // namespace domino::fft
