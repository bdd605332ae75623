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

// A simulated random oracle whose every read is charged one time unit, and
// the slow hash built from it.
#pragma once

#include <cstdint>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"

namespace robustdyn::separation {

// Seeded pseudorandom function over a 64-bit index space. Two oracles with
// the same seed hold the same bits; each keeps its own read counter. Reads
// are the only access path.
class CostedOracle {
 public:
  explicit CostedOracle(std::uint64_t seed) : key_(SplitMix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  bool ReadBit(std::uint64_t index) {
    ++reads_;
    return Mix(index) & 1ULL;
  }

  // The width-bit word R(index), charged as one read.
  std::uint64_t ReadBlock(std::uint64_t index, unsigned width) {
    internal::Require(width >= 1 && width <= 64, "block width must lie in [1,64]");
    ++reads_;
    const std::uint64_t v = Mix(index);
    return width == 64 ? v : v & ((std::uint64_t{1} << width) - 1);
  }

  std::uint64_t reads() const { return reads_; }

 private:
  std::uint64_t Mix(std::uint64_t index) const { return SplitMix64(key_ ^ SplitMix64(index)); }

  std::uint64_t key_;
  std::uint64_t reads_ = 0;
};

inline constexpr unsigned kMaxHashBits = 16;

// H_n : {0,1}^{2n} -> {0,1}^n with cost P. With b(z) the number written as
// 1 followed by the 2n bits of z, H_n(z) reads the P oracle bits at
// P*b(z)+1 .. P*b(z)+P and outputs bit k as the xor of the k-th run of P/n
// of them. Distinct z read disjoint oracle bits.
class HFunction {
 public:
  HFunction(unsigned n, std::uint64_t cost, CostedOracle& oracle)
      : n_(n), cost_(cost), oracle_(&oracle) {
    internal::Require(n >= 1 && n <= kMaxHashBits, "n must lie in [1,16]");
    internal::Require(cost >= n && cost % n == 0, "cost must be a positive multiple of n");
  }

  unsigned n() const { return n_; }
  std::uint64_t cost() const { return cost_; }
  std::uint64_t mask() const { return (std::uint64_t{1} << n_) - 1; }

  // H_n(x o y).
  std::uint64_t operator()(std::uint64_t x, std::uint64_t y) const {
    internal::Require(x <= mask() && y <= mask(), "argument wider than n bits");
    const std::uint64_t b = (std::uint64_t{1} << (2 * n_)) | (x << n_) | y;
    const std::uint64_t base = cost_ * b;
    const std::uint64_t run = cost_ / n_;
    std::uint64_t out = 0;
    for (unsigned k = 0; k < n_; ++k) {
      bool bit = false;
      for (std::uint64_t j = 1; j <= run; ++j) bit ^= oracle_->ReadBit(base + k * run + j);
      out |= std::uint64_t{bit} << k;
    }
    return out;
  }

 private:
  unsigned n_;
  std::uint64_t cost_;
  CostedOracle* oracle_;
};

}  // namespace robustdyn::separation
