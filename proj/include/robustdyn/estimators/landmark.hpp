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
#include <cstdint>
#include <variant>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/estimators/estimator.hpp"
#include "robustdyn/graph/oracles.hpp"

namespace robustdyn::estimators {

struct LandmarkOptions {
  std::size_t landmarks = 4;
};

// Commits to k random landmarks and answers min over landmarks l of
// d(src,l) + d(l,snk). Single-source distances from a landmark are
// recomputed lazily after graph updates. A landmark left isolated by a
// deletion is replaced by a fresh random vertex (a recommit); with k = n
// every vertex is a landmark and nothing is ever replaced.
class LandmarkDistanceEstimator final : public Estimator {
 public:
  explicit LandmarkDistanceEstimator(LandmarkOptions opt) : opt_(opt) {
    internal::Require(opt.landmarks >= 1, "need at least one landmark");
  }

  EstimatorSpec spec() const override { return {"distance", Problem::kDistance, 3.0, false}; }

  void Init(const Instance& x, Rng rng) override {
    rng_ = std::move(rng);
    g_ = x.graph;
    src_ = x.src;
    snk_ = x.snk;
    const std::size_t n = g_.num_vertices();
    all_ = opt_.landmarks >= n;
    landmarks_.clear();
    if (all_) {
      for (Vertex v = 0; v < n; ++v) landmarks_.push_back(v);
    } else {
      while (landmarks_.size() < opt_.landmarks) {
        const auto v = static_cast<Vertex>(UniformIndex(rng_, n));
        if (std::find(landmarks_.begin(), landmarks_.end(), v) == landmarks_.end()) {
          landmarks_.push_back(v);
        }
      }
    }
    dist_.assign(landmarks_.size(), {});
    fresh_.assign(landmarks_.size(), false);
    work_.preprocess += n + g_.num_edges();
  }

  void Update(const estimators::Update& up) override {
    ++work_.update;
    if (const auto* pu = std::get_if<PairUpdate>(&up)) {
      src_ = pu->src;
      snk_ = pu->snk;
      return;
    }
    const auto* gu = std::get_if<GraphUpdate>(&up);
    if (!gu) throw InvalidUpdate("distance estimator takes graph or pair updates");
    graph::ApplyUpdate(g_, *gu);
    std::fill(fresh_.begin(), fresh_.end(), false);
    if (all_ || gu->is_insert()) return;
    for (auto& l : landmarks_) {
      if (g_.edge_count(l) > 0) continue;
      l = Redraw();
      ++recommits_;
    }
  }

  double Query() override {
    ++work_.query;
    if (src_ == snk_) return 0.0;
    double best = graph::kInfinity;
    for (std::size_t i = 0; i < landmarks_.size(); ++i) {
      if (!fresh_[i]) {
        dist_[i] = graph::SingleSourceDistances(g_, landmarks_[i]);
        fresh_[i] = true;
        work_.query += g_.num_vertices() + 2 * g_.num_edges();
      }
      best = std::min(best, dist_[i][src_] + dist_[i][snk_]);
    }
    return best;
  }

  std::uint64_t recommits() const override { return recommits_; }
  const std::vector<Vertex>& landmarks() const { return landmarks_; }

 private:
  // Uniform vertex with an incident edge that is not already a landmark.
  Vertex Redraw() {
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (g_.edge_count(v) > 0 &&
          std::find(landmarks_.begin(), landmarks_.end(), v) == landmarks_.end()) {
        pool.push_back(v);
      }
    }
    if (pool.empty()) throw InvalidArgument("no vertex left to commit to");
    return pool[UniformIndex(rng_, pool.size())];
  }

  LandmarkOptions opt_;
  Rng rng_;
  Graph g_;
  Vertex src_ = 0;
  Vertex snk_ = 0;
  bool all_ = false;
  std::vector<Vertex> landmarks_;
  std::vector<std::vector<double>> dist_;
  std::vector<bool> fresh_;
  std::uint64_t recommits_ = 0;
};

}  // namespace robustdyn::estimators
