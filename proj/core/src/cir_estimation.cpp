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

#include "domino/cir_estimation.hpp"

#include "domino/errors.hpp"
#include "domino/fft.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace domino
{

double default_ridge(const SubcarrierLayout &layout, const TapSet &tapset)
{
    double gram_trace = static_cast<double>(tapset.size()) *
                        static_cast<double>(layout.n_active()) / layout.n_fft;
    return 1e-6 * gram_trace / static_cast<double>(tapset.size());
}

LsOperator build_ls_operator(std::shared_ptr<const SubcarrierLayout> layout,
                             std::shared_ptr<const TapSet> tapset, double ridge)
{
    if (!layout || !tapset)
        throw Error("build_ls_operator: null layout or tapset");
    layout->validate();
    tapset->validate(layout->n_fft);
    if (tapset->size() > layout->n_active())
        throw Error("build_ls_operator: |tapset| exceeds |active| (LS unsolvable)");
    if (ridge < 0.0)
        throw Error("build_ls_operator: ridge must be non-negative");

    const Eigen::Index n_k = static_cast<Eigen::Index>(layout->n_active());
    const Eigen::Index n_l = static_cast<Eigen::Index>(tapset->size());
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(layout->n_fft));

    Eigen::MatrixXcd f(n_k, n_l);
    for (Eigen::Index i = 0; i < n_k; i++)
    {
        for (Eigen::Index j = 0; j < n_l; j++)
        {
            double phase = -2.0 * std::numbers::pi * static_cast<double>(layout->active[i]) *
                           static_cast<double>(tapset->taps[j]) / layout->n_fft;
            f(i, j) = cplx(std::cos(phase) * inv_sqrt_n, std::sin(phase) * inv_sqrt_n);
        }
    }

    Eigen::MatrixXcd gram = f.adjoint() * f;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    double lambda_min = eig.eigenvalues().minCoeff();
    double lambda_max = eig.eigenvalues().maxCoeff();
    double cond = (lambda_min > 0.0) ? lambda_max / lambda_min
                                     : std::numeric_limits<double>::infinity();
    if (ridge == 0.0 && !(cond < kGramConditionBound))
        throw IllConditioned("gram condition " + std::to_string(cond) +
                             " exceeds bound; degenerate (active, tapset) pairing");

    gram.diagonal().array() += ridge;

    LsOperator op;
    op.layout = std::move(layout);
    op.tapset = std::move(tapset);
    op.ridge = ridge;
    op.gram_condition = cond;
    op.matrix = gram.llt().solve(f.adjoint());
    return op;
}

Cir estimate_cir_ls(const LsOperator &op, const CsiFrame &frame)
{
    if (!frame.layout || !(*frame.layout == *op.layout))
        throw LayoutMismatch("estimate_cir_ls: frame layout differs from operator layout");
    if (frame.values.size() != static_cast<Eigen::Index>(op.layout->n_active()))
        throw LayoutMismatch("estimate_cir_ls: frame size differs from active count");

    Cir cir;
    cir.tapset = op.tapset;
    cir.ts = op.layout->ts();
    cir.taps = op.matrix * frame.values;
    return cir;
}

Cir estimate_cir_idft(const CsiFrame &frame)
{
    if (!frame.layout)
        throw LayoutMismatch("estimate_cir_idft: frame has no layout");
    const auto &layout = *frame.layout;
    if (frame.values.size() != static_cast<Eigen::Index>(layout.n_active()))
        throw LayoutMismatch("estimate_cir_idft: frame size differs from active count");

    std::vector<cplx> full(static_cast<std::size_t>(layout.n_fft), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < layout.n_active(); i++)
        full[static_cast<std::size_t>(layout.active[i])] = frame.values[static_cast<Eigen::Index>(i)];

    std::vector<cplx> taps;
    fft::idft(full, taps);

    Cir cir;
    cir.tapset = std::make_shared<TapSet>(TapSet::first(layout.n_fft));
    cir.ts = layout.ts();
    cir.taps.resize(layout.n_fft);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(layout.n_fft));
    for (int n = 0; n < layout.n_fft; n++)
        cir.taps[n] = taps[static_cast<std::size_t>(n)] * inv_sqrt_n;
    return cir;
}

} // namespace domino
