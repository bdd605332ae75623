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
#include <optional>
#include <vector>

#include "robustdyn/common/errors.hpp"

namespace robustdyn::dp {

// The finite ordered answer domain {0} ∪ {±(1+alpha)^a : |a| <= A} with
// A = ceil(log_{1+alpha} U). Points are stored in increasing order.
class OrderedGrid {
 public:
  struct Rounded {
    double value = 0.0;
    std::size_t index = 0;
    bool clamped = false;  // |v| exceeded the grid extreme
  };

  static OrderedGrid Build(double bound, double alpha) {
    internal::Require(bound > 1.0 && std::isfinite(bound), "grid bound U must exceed 1");
    internal::Require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0,1]");
    OrderedGrid grid;
    grid.bound_ = bound;
    grid.alpha_ = alpha;
    // Tolerance keeps exact powers such as U = (1+alpha)^k from rounding up.
    const double raw = std::log(bound) / std::log1p(alpha);
    grid.max_exponent_ = static_cast<int>(std::ceil(raw - 1e-9));
    const int a_max = grid.max_exponent_;
    std::vector<double> positive;
    positive.reserve(2 * a_max + 1);
    for (int a = -a_max; a <= a_max; ++a) {
      positive.push_back(std::pow(1.0 + alpha, a));
    }
    grid.points_.reserve(2 * positive.size() + 1);
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
      grid.points_.push_back(-*it);
    }
    grid.points_.push_back(0.0);
    grid.points_.insert(grid.points_.end(), positive.begin(), positive.end());
    return grid;
  }

  double bound() const { return bound_; }
  double alpha() const { return alpha_; }
  int max_exponent() const { return max_exponent_; }
  double extreme() const { return points_.back(); }
  std::size_t size() const { return points_.size(); }
  std::size_t zero_index() const { return points_.size() / 2; }
  const std::vector<double>& points() const { return points_; }
  double operator[](std::size_t i) const { return points_[i]; }

  std::optional<std::size_t> IndexOf(double v) const {
    const auto rounded = Round(v);
    if (rounded.clamped) return std::nullopt;
    const double p = points_[rounded.index];
    if (std::abs(p - v) <= kRelTol * std::max(1.0, std::abs(v))) return rounded.index;
    return std::nullopt;
  }

  bool Contains(double v) const { return IndexOf(v).has_value(); }

  // Rounds away from zero to the nearest grid magnitude; 0 stays 0.
  Rounded Round(double v) const {
    const std::size_t zero = zero_index();
    if (v == 0.0) return {0.0, zero, false};
    const double magnitude = std::abs(v);
    std::size_t offset;  // index into the positive half, 0 = smallest
    bool clamped = false;
    const std::size_t half = zero;
    if (magnitude > extreme() * (1.0 + kRelTol)) {
      offset = half - 1;
      clamped = true;
    } else {
      const auto first = points_.begin() + static_cast<std::ptrdiff_t>(zero + 1);
      const auto it = std::lower_bound(first, points_.end(), magnitude * (1.0 - kRelTol));
      offset = static_cast<std::size_t>(it - first);
      if (offset >= half) offset = half - 1;
    }
    const std::size_t index = v > 0 ? zero + 1 + offset : zero - 1 - offset;
    return {points_[index], index, clamped};
  }

 private:
  static constexpr double kRelTol = 1e-12;

  OrderedGrid() = default;

  double bound_ = 0.0;
  double alpha_ = 0.0;
  int max_exponent_ = 0;
  std::vector<double> points_;
};

inline OrderedGrid BuildGrid(double bound, double alpha) {
  return OrderedGrid::Build(bound, alpha);
}

inline OrderedGrid::Rounded RoundToGrid(double v, const OrderedGrid& grid) {
  return grid.Round(v);
}

}  // namespace robustdyn::dp
