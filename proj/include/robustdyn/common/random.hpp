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

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace robustdyn {

// All randomness in the library flows through explicitly passed engines so
// every experiment is a pure function of its master seed.
using Rng = std::mt19937_64;

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent child seed for stream `stream` of `master`.
inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream) {
  return SplitMix64(SplitMix64(master) ^ SplitMix64(stream + 0x51ed270b27f1ULL));
}

inline std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t a,
                                std::uint64_t b) {
  return DeriveSeed(DeriveSeed(master, a), b);
}

// Uniform double in the open interval (0, 1).
inline double UniformOpen01(Rng& rng) {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(rng() >> 11) + 0.5) * kScale;
}

inline bool Bernoulli(Rng& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return UniformOpen01(rng) < p;
}

// Uniform integer in [0, n).
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

// Binomial(trials, p). The fair-coin case is a popcount over raw bits.
inline std::uint64_t Binomial(Rng& rng, std::uint64_t trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  if (p == 0.5 && trials <= 64) {
    const std::uint64_t mask =
        trials == 64 ? ~0ULL : ((std::uint64_t{1} << trials) - 1);
    return static_cast<std::uint64_t>(std::popcount(rng() & mask));
  }
  return std::binomial_distribution<std::uint64_t>(trials, p)(rng);
}

}  // namespace robustdyn
