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
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/dp/grid.hpp"

namespace robustdyn::dp {

struct MedianConfig {
  double epsilon = 0.5;
  double beta = 0.01;
  std::uint64_t gamma = 0;  // rank-error bound
};

// Gamma = ceil((constant / eps) * ln(domain_size / beta)). With the
// exponential mechanism below the tail bound holds for constant = 2.
inline MedianConfig MakeMedianConfig(double epsilon, double beta,
                                     std::size_t domain_size,
                                     double constant = 2.0) {
  internal::Require(epsilon > 0.0, "eps_med must be positive");
  internal::Require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  internal::Require(domain_size >= 1, "domain must be nonempty");
  const double g = std::ceil(constant / epsilon *
                             std::log(static_cast<double>(domain_size) / beta));
  return {epsilon, beta, static_cast<std::uint64_t>(std::max(0.0, g))};
}

// Exact output distribution of the exponential mechanism with weights
// exp(eps * score / (2 * sensitivity)).
inline std::vector<double> ExponentialMechanismProbabilities(
    std::span<const double> scores, double epsilon, double sensitivity = 1.0) {
  internal::Require(!scores.empty(), "exponential mechanism needs candidates");
  internal::Require(epsilon > 0.0 && sensitivity > 0.0,
                    "eps and sensitivity must be positive");
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> weights(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    weights[i] = std::exp(epsilon * (scores[i] - top) / (2.0 * sensitivity));
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return weights;
}

inline std::size_t SampleCategorical(std::span<const double> probabilities, Rng& rng) {
  const double u = UniformOpen01(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (u < acc) return i;
  }
  // Rounding slack: return the last candidate with positive mass.
  for (std::size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return i;
  }
  return probabilities.size() - 1;
}

inline std::size_t ExponentialMechanism(std::span<const double> scores,
                                        double epsilon, double sensitivity,
                                        Rng& rng) {
  const auto probs = ExponentialMechanismProbabilities(scores, epsilon, sensitivity);
  return SampleCategorical(probs, rng);
}

// Median utility of every domain index: min(#{s >= x}, #{s <= x}). Changing
// one sample row moves each count by at most one, so sensitivity is 1.
inline std::vector<double> MedianUtilities(std::span<const std::size_t> sample,
                                           std::size_t domain_size) {
  std::vector<std::uint64_t> counts(domain_size, 0);
  for (std::size_t idx : sample) {
    internal::Require(idx < domain_size, "sample element is off the grid");
    ++counts[idx];
  }
  std::vector<double> utility(domain_size);
  const std::uint64_t total = sample.size();
  std::uint64_t below = 0;  // #{s < x}
  for (std::size_t i = 0; i < domain_size; ++i) {
    const std::uint64_t at_most = below + counts[i];
    const std::uint64_t at_least = total - below;
    utility[i] = static_cast<double>(std::min(at_most, at_least));
    below = at_most;
  }
  return utility;
}

inline std::vector<double> PrivateMedianDistribution(
    std::span<const std::size_t> sample, std::size_t domain_size, double epsilon) {
  internal::Require(!sample.empty(), "private median needs a nonempty sample");
  const auto utility = MedianUtilities(sample, domain_size);
  return ExponentialMechanismProbabilities(utility, epsilon, 1.0);
}

inline std::size_t PrivateMedianIndex(std::span<const std::size_t> sample,
                                      std::size_t domain_size, double epsilon,
                                      Rng& rng) {
  const auto probs = PrivateMedianDistribution(sample, domain_size, epsilon);
  return SampleCategorical(probs, rng);
}

// (eps_med, 0)-DP approximate median over the grid. Every sample element must
// be a grid point.
inline double PrivateMedian(std::span<const double> sample, const OrderedGrid& grid,
                            const MedianConfig& cfg, Rng& rng) {
  internal::Require(!sample.empty(), "private median needs a nonempty sample");
  std::vector<std::size_t> indices;
  indices.reserve(sample.size());
  for (double v : sample) {
    const auto idx = grid.IndexOf(v);
    internal::Require(idx.has_value(), "sample element is off the grid");
    indices.push_back(*idx);
  }
  return grid[PrivateMedianIndex(indices, grid.size(), cfg.epsilon, rng)];
}

// True when at least |S|/2 - gamma elements lie on each side of x.
inline bool SatisfiesRankCondition(std::span<const double> sample, double x,
                                   std::uint64_t gamma) {
  std::uint64_t at_least = 0, at_most = 0;
  for (double v : sample) {
    if (v >= x) ++at_least;
    if (v <= x) ++at_most;
  }
  const double need = static_cast<double>(sample.size()) / 2.0 - static_cast<double>(gamma);
  return static_cast<double>(at_least) >= need && static_cast<double>(at_most) >= need;
}

}  // namespace robustdyn::dp
