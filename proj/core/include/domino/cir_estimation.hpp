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
// CIR recovery from partial-subcarrier CSI. The DFT convention is unitary
// with forward kernel e^{−j2πnk/N}; the LS estimator solves
//
//   ĥ = (F_{𝒦,𝓛}^H F_{𝒦,𝓛} + λI)^{−1} F_{𝒦,𝓛}^H h̃
//
// on the fixed support 𝓛, while the IDFT baseline zero-fills the guard
// bands and transforms all N taps.

#ifndef DOMINO_CIR_ESTIMATION_HPP
#define DOMINO_CIR_ESTIMATION_HPP

#include "domino/types.hpp"

namespace domino
{

// Condition-number ceiling for λ = 0; beyond this a double-precision
// normal-equation solve is meaningless.
inline constexpr double kGramConditionBound = 1e8;

// Precomputed LS reconstruction operator for one (layout, tapset) pair.
struct LsOperator
{
    std::shared_ptr<const SubcarrierLayout> layout;
    std::shared_ptr<const TapSet> tapset;
    Eigen::MatrixXcd matrix; // |taps| × |active|
    double ridge = 0.0;
    double gram_condition = 0.0;
};

// Default ridge from the design note: 1e−6 · trace(Gram) / |𝓛|. The Gram
// trace equals |𝓛|·|𝒦|/N under the unitary convention.
double default_ridge(const SubcarrierLayout &layout, const TapSet &tapset);

// Builds the operator; O(|𝒦||𝓛|² + |𝓛|³), done once per layout. Throws
// IllConditioned when ridge = 0 and cond(Gram) exceeds kGramConditionBound.
LsOperator build_ls_operator(std::shared_ptr<const SubcarrierLayout> layout,
                             std::shared_ptr<const TapSet> tapset, double ridge = 0.0);

// ĥ = op.matrix · frame.values. Throws LayoutMismatch.
Cir estimate_cir_ls(const LsOperator &op, const CsiFrame &frame);

// Zero-fill inactive subcarriers, inverse unitary N-point DFT, all N taps.
Cir estimate_cir_idft(const CsiFrame &frame);

} // namespace domino

#endif
