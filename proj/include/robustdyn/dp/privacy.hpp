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
#include <cstdint>
#include <string>

#include "robustdyn/common/errors.hpp"

namespace robustdyn::dp {

// (epsilon, delta) differential privacy parameters.
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;

  static PrivacyParams Make(double epsilon, double delta) {
    internal::Require(epsilon > 0.0, "epsilon must be positive");
    internal::Require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0,1]");
    return {epsilon, delta};
  }
};

// k-fold adaptive composition of (eps, delta)-DP mechanisms:
//   eps' = sqrt(2k ln(1/delta')) * eps + 2k eps^2,   delta_total = delta' + k delta.
// eps = 0 is accepted and composes to zero.
inline PrivacyParams AdvancedComposition(std::uint64_t k, double eps,
                                         double delta, double delta_prime) {
  internal::Require(k >= 1, "k must be a positive integer");
  internal::Require(eps >= 0.0 && eps <= 1.0, "eps must lie in [0,1]");
  internal::Require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0,1]");
  internal::Require(delta_prime > 0.0 && delta_prime <= 1.0,
                    "delta_prime must lie in (0,1]");
  const double kd = static_cast<double>(k);
  const double eps_total =
      std::sqrt(2.0 * kd * std::log(1.0 / delta_prime)) * eps +
      2.0 * kd * eps * eps;
  return {eps_total, delta_prime + kd * delta};
}

// Privacy of an eps-DP mechanism run on k rows sampled with repetition from
// n rows: (6k/n) * eps. Requires k <= n/2 and eps <= 1.
inline double SubsampleEpsilon(double eps, std::uint64_t k, std::uint64_t n) {
  internal::Require(n >= 1 && k >= 1, "k and n must be positive");
  internal::Require(2 * k <= n, "subsampling requires k <= n/2");
  internal::Require(eps >= 0.0 && eps <= 1.0, "eps must lie in [0,1]");
  return 6.0 * static_cast<double>(k) / static_cast<double>(n) * eps;
}

}  // namespace robustdyn::dp
