// Copyright 2026 The robustdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/dp/grid.hpp"
#include "robustdyn/dp/median.hpp"
#include "robustdyn/dp/privacy.hpp"

namespace robustdyn::wrapper {

enum class ConstantsMode { kPaper, kScaled };

inline std::string ConstantsModeName(ConstantsMode m) {
  return m == ConstantsMode::kPaper ? "paper" : "scaled";
}

// Multipliers used only in scaled mode:
//   s = ceil(s_mult * Gamma),
//   c = max(2s, ceil(c_mult * s * eps_med * sqrt(2T ln(100/beta)))).
struct WrapperConstants {
  ConstantsMode mode = ConstantsMode::kScaled;
  double s_mult = 4.0;
  double c_mult = 8.0;
  double eps_med = 0.5;  // fixed to 1/2 in paper mode
};

inline WrapperConstants PaperConstants() { return {ConstantsMode::kPaper, 100.0, 1200.0, 0.5}; }

struct WrapperParams {
  std::uint64_t T = 1;  // outputs per phase
  double U = 2.0;
  double alpha = 1.0;
  double delta_fail = 0.01;
  WrapperConstants constants;

  double beta = 0.0;
  double eps_med = 0.5;
  dp::OrderedGrid grid = dp::BuildGrid(2.0, 1.0);
  std::uint64_t gamma = 0;  // rank-error bound of the private median
  std::uint64_t s = 0;      // copies sampled per output
  std::uint64_t c = 0;      // copies

  // sqrt(2T ln(100/beta)).
  double composition_root() const {
    return std::sqrt(2.0 * static_cast<double>(T) * std::log(100.0 / beta));
  }
};

inline WrapperParams DeriveParams(std::uint64_t T, double U, double alpha, double delta_fail,
                                  const WrapperConstants& consts = {}) {
  internal::Require(T >= 1, "T must be at least 1");
  internal::Require(U > 1.0 && std::isfinite(U), "U must exceed 1");
  internal::Require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
  internal::Require(delta_fail > 0.0 && delta_fail < 1.0, "delta_fail must lie in (0,1)");
  internal::Require(consts.s_mult > 0.0 && consts.c_mult > 0.0, "multipliers must be positive");
  WrapperParams p;
  p.T = T;
  p.U = U;
  p.alpha = alpha;
  p.delta_fail = delta_fail;
  p.constants = consts;
  p.beta = delta_fail / (2.0 * static_cast<double>(T));
  p.eps_med = consts.mode == ConstantsMode::kPaper ? 0.5 : consts.eps_med;
  internal::Require(p.eps_med > 0.0 && p.eps_med <= 1.0, "eps_med must lie in (0,1]");
  p.grid = dp::BuildGrid(U, alpha);
  p.gamma = dp::MakeMedianConfig(p.eps_med, p.beta, p.grid.size()).gamma;
  const double root = p.composition_root();
  if (consts.mode == ConstantsMode::kPaper) {
    p.s = 100 * p.gamma;
    p.c = static_cast<std::uint64_t>(
        std::ceil(1200.0 * static_cast<double>(p.s) * p.eps_med * root));
  } else {
    p.s = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(consts.s_mult * static_cast<double>(p.gamma))));
    const auto scaled = static_cast<std::uint64_t>(
        std::ceil(consts.c_mult * static_cast<double>(p.s) * p.eps_med * root));
    p.c = std::max(2 * p.s, scaled);
  }
  return p;
}

// Per-output privacy of the subsampled median with respect to the copies'
// randomness.
inline double OutputEpsilon(const WrapperParams& p) {
  return dp::SubsampleEpsilon(p.eps_med, p.s, p.c);
}

// Privacy of a whole phase of T outputs, composed with delta' = beta/100.
inline double TranscriptEpsilon(const WrapperParams& p) {
  const double e = OutputEpsilon(p);
  const double t = static_cast<double>(p.T);
  return p.composition_root() * e + 2.0 * t * e * e;
}

// The budget a phase must stay within for the accuracy argument to apply.
inline constexpr double kTranscriptBudget = 0.01;

inline bool WithinCompositionBudget(const WrapperParams& p, double tol = 1e-9) {
  return TranscriptEpsilon(p) <= kTranscriptBudget + tol;
}

}  // namespace robustdyn::wrapper
