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

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/dp/grid.hpp"
#include "robustdyn/dp/median.hpp"

namespace robustdyn::wrapper {

// Answers one output: samples s copy indices with repetition from [c], rounds
// the sampled answers to the grid, and releases their private median. The
// sampled indices live only inside Aggregate.
class Aggregator {
 public:
  struct Result {
    double value = 0.0;
    std::uint64_t clamped = 0;         // distinct sampled copies beyond the grid extreme
    std::uint64_t copies_queried = 0;  // distinct copies asked
    std::uint64_t work = 0;
  };

  Aggregator(const dp::OrderedGrid& grid, std::uint64_t s, std::uint64_t c, double eps_med,
             Rng rng)
      : grid_(grid), s_(s), c_(c), eps_med_(eps_med), rng_(std::move(rng)) {
    internal::Require(s >= 1 && c >= 1, "s and c must be positive");
  }

  // answer(j) returns copy j's current estimate; it is called once per
  // distinct sampled copy.
  template <class AnswerFn>
  Result Aggregate(AnswerFn&& answer) {
    Result r;
    std::unordered_map<std::uint64_t, std::size_t> cache;
    std::vector<std::size_t> indices;
    indices.reserve(s_);
    for (std::uint64_t k = 0; k < s_; ++k) {
      const std::uint64_t j = UniformIndex(rng_, c_);
      auto it = cache.find(j);
      if (it == cache.end()) {
        const auto rounded = grid_.Round(answer(j));
        it = cache.emplace(j, rounded.index).first;
        r.clamped += rounded.clamped;
      }
      indices.push_back(it->second);
    }
    r.copies_queried = cache.size();
    r.value = grid_[dp::PrivateMedianIndex(indices, grid_.size(), eps_med_, rng_)];
    r.work = s_ + grid_.size();
    return r;
  }

 private:
  dp::OrderedGrid grid_;
  std::uint64_t s_;
  std::uint64_t c_;
  double eps_med_;
  Rng rng_;
};

}  // namespace robustdyn::wrapper
