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

#include <cmath>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"

namespace robustdyn::dp {

// One draw from Laplace(0, scale) by inverse-CDF sampling.
inline double LaplaceSample(double scale, Rng& rng) {
  internal::Require(scale > 0.0 && std::isfinite(scale),
                    "Laplace scale must be positive");
  const double u = UniformOpen01(rng) - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

}  // namespace robustdyn::dp
