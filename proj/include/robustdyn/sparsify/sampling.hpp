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
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"

namespace robustdyn::sparsify {

// Smallest power of two >= deg. Requires deg >= 1.
inline std::uint64_t ApproxDegree(std::uint64_t deg) {
  internal::Require(deg >= 1, "approximate degree of an isolated vertex");
  return std::bit_ceil(deg);
}

// min{1, (C ln n / (eps phi^2))^2 * 2 / deg_tilde}.
inline double PieceSamplingProb(std::size_t n, double eps, double phi,
                                std::uint64_t deg_tilde, double constant = 24.0) {
  internal::Require(n >= 2 && eps > 0 && phi > 0 && deg_tilde >= 1 && constant > 0,
                    "sampling probability parameters must be positive");
  const double factor = constant * std::log(static_cast<double>(n)) / (eps * phi * phi);
  return std::min(1.0, factor * factor * 2.0 / static_cast<double>(deg_tilde));
}

struct SamplingConfig {
  double epsilon = 0.5;
  double phi = 0.1;
  double constant = 24.0;
  // When positive, replaces the squared factor above: p = min{1, 2K/deg_tilde}.
  // Lets desk-scale experiments exercise p < 1.
  double oversample = 0.0;
};

inline double SamplingProb(const SamplingConfig& cfg, std::size_t n, std::uint64_t deg_tilde) {
  if (cfg.oversample > 0.0) {
    internal::Require(deg_tilde >= 1, "deg_tilde must be positive");
    return std::min(1.0, 2.0 * cfg.oversample / static_cast<double>(deg_tilde));
  }
  return PieceSamplingProb(n, cfg.epsilon, cfg.phi, deg_tilde, cfg.constant);
}

// Each index of [0, N) independently with probability p, by geometric skips.
// `touches` (if given) is increased by the number of random draws, which is
// the number of sampled indices plus one.
inline std::vector<std::uint64_t> SubsetSample(std::uint64_t universe, double p, Rng& rng,
                                               std::uint64_t* touches = nullptr) {
  internal::Require(p >= 0.0 && p <= 1.0, "subset sampling probability must lie in [0,1]");
  std::vector<std::uint64_t> out;
  std::uint64_t draws = 0;
  if (p >= 1.0) {
    out.resize(universe);
    for (std::uint64_t i = 0; i < universe; ++i) out[i] = i;
    draws = universe + 1;
  } else if (p > 0.0) {
    const double log_q = std::log1p(-p);
    std::uint64_t next = 0;
    while (true) {
      ++draws;
      const double skip = std::floor(std::log(UniformOpen01(rng)) / log_q);
      if (skip >= static_cast<double>(universe - next)) break;
      next += static_cast<std::uint64_t>(skip);
      out.push_back(next);
      if (++next >= universe) break;
    }
  } else {
    draws = 1;
  }
  if (touches) *touches += draws;
  return out;
}

}  // namespace robustdyn::sparsify
