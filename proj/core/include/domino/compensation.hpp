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
// The compensation core: per frame, locate the dominant path at fractional
// delay precision, undo the delay with a frequency-domain phase ramp, and
// normalize the recovered CIR by its first tap. The normalized taps are
// invariant under the per-frame distortion triple (β, θ, ε).

#ifndef DOMINO_COMPENSATION_HPP
#define DOMINO_COMPENSATION_HPP

#include "domino/cir_estimation.hpp"
#include "domino/types.hpp"

#include <optional>

namespace domino
{

// Tuning knobs for the alignment search. Defaults are sized for the desk
// layout and do not normally need adjustment.
struct SearchConfig
{
    // Termination width of the fractional-delay line search, in taps.
    double tol_taps = 1e-4;

    // Coarse peaks farther than this from tap 0 are rejected as noise;
    // 0 means a quarter of the FFT length.
    int search_radius = 0;

    // A tap counts as signal when its magnitude exceeds
    // max(noise_floor_rel × median tap magnitude, noise_floor_abs). The
    // absolute floor keeps the guard meaningful on all-noise frames, where
    // a purely relative floor would never trigger.
    double noise_floor_rel = 1e-3;
    double noise_floor_abs = 1e-12;

    // Populate CompensatedFrame::csi_norm.
    bool with_csi_norm = false;

    // Step size and iteration cap of the fixed-point polish that follows
    // the golden-section stage.
    double polish_delta = 1e-4;
    int polish_iters = 32;
};

// Outcome of the fractional-delay search on one frame. epsilon_est is the
// signed position offset of the frame content relative to the tap grid
// origin: shifting the frame by −epsilon_est centres the dominant path on
// tap 0. For a dominant path at delay τ₀ and draw offset ε this approaches
// −(τ₀ + ε)/T_s.
struct AlignmentResult
{
    double epsilon_est = 0.0;
    double peak_power = 0.0; // |h[0]|² after alignment, band-limited units
    int n0 = 0;              // coarse strongest-tap index before alignment
};

struct CompensatedFrame
{
    Cir cir_norm;
    AlignmentResult alignment;
    std::optional<Eigen::VectorXcd> csi_norm;
};

// Circularly advances the frame content by shift_taps taps: the output
// spectrum is H[k]·e^{+j2π k̃ shift/N} with k̃ the signed DFT index, so the
// delay-domain content moves to h[n + shift]. Exactly invertible by the
// opposite shift; fractional shifts are exact for band-limited content.
CsiFrame apply_delay_shift(const CsiFrame &frame, double shift_taps);

// Locates the dominant path. Coarse stage: strongest-magnitude tap n₀ of the
// LS CIR (ties toward the smallest index). Refine stage: golden-section
// maximization of the band-limited first-tap magnitude
//
//   J(ε′) = | mean_k H[k]·e^{−j2π k̃ ε′ / N} |
//
// over ε′ ∈ [−n₀−1, −n₀+1] to cfg.tol_taps, then a fixed-point polish that
// lands on the stationary point of J, so re-running the search on an already
// aligned frame returns zero. Throws EmptySignal when no tap rises above the
// noise floor or the peak sits outside the search radius.
AlignmentResult estimate_alignment(const CsiFrame &frame, const LsOperator &op,
                                   const SearchConfig &cfg = {});

// The refine stage alone, starting from a caller-supplied coarse tap index
// (shared by estimate_alignment and the IDFT ablation arm). Throws
// EmptySignal when n0 lies outside the search radius.
AlignmentResult refine_alignment(const CsiFrame &frame, int n0, const SearchConfig &cfg = {});

// The noise floor used by the alignment and normalization guards:
// max(noise_floor_rel × median tap magnitude, noise_floor_abs).
double cir_noise_floor(const Eigen::VectorXcd &taps, const SearchConfig &cfg = {});

// Divides every tap by tap 0 and pins the result's tap 0 to exactly 1+0j.
// Throws DominantTapTooWeak when tap 0 sits below the noise floor, and
// EmptySignal when the whole CIR does.
Cir dominant_path_normalize(const Cir &cir, const SearchConfig &cfg = {});

// Full per-frame pipeline: estimate the alignment, undo it on the CSI,
// re-estimate the CIR, and normalize by the dominant tap. When
// cfg.with_csi_norm is set, csi_norm holds the aligned CSI divided by the
// aligned dominant tap; feeding csi_norm back through this function is
// idempotent.
CompensatedFrame compensate_frame(const CsiFrame &frame, const LsOperator &op,
                                  const SearchConfig &cfg = {});

// Projects a CIR back onto the active subcarriers of the operator's layout
// (the forward counterpart of estimate_cir_ls, for plotting compensated CSI).
Eigen::VectorXcd resynthesize(const LsOperator &op, const Cir &cir);

// Opt-in frame-to-frame stabilizer: clamps jumps of the alignment estimate
// to ±max_jump_taps relative to the previous accepted value. Stateful and
// single-stream; keep one instance per antenna stream.
class AlignmentSmoother
{
  public:
    explicit AlignmentSmoother(double max_jump_taps = 0.5) : max_jump_(max_jump_taps) {}

    double apply(double epsilon_est);
    void reset() { primed_ = false; }

  private:
    double max_jump_;
    double prev_ = 0.0;
    bool primed_ = false;
};

} // namespace domino

#endif
