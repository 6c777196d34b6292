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

#ifndef DOMINO_ERRORS_HPP
#define DOMINO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace domino
{

// Base class for every error thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Gram matrix condition number exceeds the configured bound at ridge = 0.
class IllConditioned : public Error
{
  public:
    using Error::Error;
};

// Frame and operator (or two frames) were built for different layouts.
class LayoutMismatch : public Error
{
  public:
    using Error::Error;
};

// All tap magnitudes sit below the noise floor; the frame is unusable.
class EmptySignal : public Error
{
  public:
    using Error::Error;
};

// The reference tap is too weak to divide by (Eq. 4 guard).
class DominantTapTooWeak : public Error
{
  public:
    using Error::Error;
};

// Requested reference subcarrier is not in the active set.
class RefNotActive : public Error
{
  public:
    using Error::Error;
};

// Paired inputs differ in length.
class LengthMismatch : public Error
{
  public:
    using Error::Error;
};

// Not enough samples for a spectral estimate.
class TooShort : public Error
{
  public:
    using Error::Error;
};

// No spectral peak clears the peak-to-median threshold.
class NoPeak : public Error
{
  public:
    using Error::Error;
};

// Configuration file problems; message carries file and line.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

// File I/O or malformed trace data.
class IoError : public Error
{
  public:
    using Error::Error;
};

} // namespace domino

#endif
