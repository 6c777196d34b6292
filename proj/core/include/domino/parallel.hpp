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

#ifndef DOMINO_PARALLEL_HPP
#define DOMINO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace domino
{

// Worker count: DOMINO_THREADS if set (≥ 1), otherwise hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n) on contiguous index chunks. Callers write
// results into preallocated slot i, which keeps parallel output identical
// to serial output. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body, int threads = 0);

} // namespace domino

#endif
