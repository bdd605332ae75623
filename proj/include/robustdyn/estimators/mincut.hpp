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
#include <unordered_map>
#include <variant>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/estimators/estimator.hpp"
#include "robustdyn/graph/oracles.hpp"

namespace robustdyn::estimators {

// Karger-style rate min{1, C eps^-2 ln n / lambda_hat}.
inline double KargerRate(std::size_t n, double eps, double lambda_hat, double constant = 3.0) {
  internal::Require(n >= 2 && eps > 0 && lambda_hat > 0, "Karger rate parameters must be positive");
  return std::min(1.0, constant * std::log(static_cast<double>(n)) / (eps * eps * lambda_hat));
}

struct MinCutOptions {
  double rho = 1.0;
  double epsilon = 0.25;
};

// Keeps each unit of edge weight independently with probability rho, scales
// kept weight by 1/rho, and answers the exact min cut of the sample. With
// rho < 1 answers are divided by (1 - eps), so an estimate within (1 +- eps)
// of the truth becomes a one-sided gamma = (1+eps)/(1-eps) approximation.
class MinCutEstimator final : public Estimator {
 public:
  explicit MinCutEstimator(MinCutOptions opt) : opt_(opt) {
    internal::Require(opt.rho > 0.0 && opt.rho <= 1.0, "rho must lie in (0,1]");
    internal::Require(opt.epsilon >= 0.0 && opt.epsilon < 1.0, "epsilon must lie in [0,1)");
  }

  EstimatorSpec spec() const override {
    const double gamma = sampling() ? (1 + opt_.epsilon) / (1 - opt_.epsilon) : 1.0;
    return {"mincut", Problem::kMinCut, gamma, false};
  }

  void Init(const Instance& x, Rng rng) override {
    rng_ = std::move(rng);
    sample_ = Graph(x.graph.num_vertices());
    witness_.clear();
    for (const auto& e : x.graph.Edges()) Insert(e.u, e.v, e.w);
    dirty_ = true;
    work_.preprocess += x.graph.num_edges() + x.graph.num_vertices();
  }

  void Update(const estimators::Update& up) override {
    const auto* gu = std::get_if<GraphUpdate>(&up);
    if (!gu) throw InvalidUpdate("mincut estimator takes graph updates only");
    ++work_.update;
    if (gu->is_insert()) {
      Insert(gu->u, gu->v, gu->w);
    } else if (sample_.HasEdge(gu->u, gu->v)) {
      const double w = sample_.Weight(gu->u, gu->v);
      sample_.RemoveEdge(gu->u, gu->v);
      // Every cut loses at most w and the witness loses exactly w when the
      // edge crosses it, so the witness stays minimum.
      if (!dirty_ && Crosses(gu->u, gu->v)) {
        value_ -= w;
      } else {
        dirty_ = true;
      }
    }
  }

  double Query() override {
    if (dirty_) {
      const auto n = static_cast<std::uint64_t>(sample_.num_vertices());
      auto r = graph::MinCutExact(sample_);
      value_ = r.value;
      witness_ = std::move(r.cut.side);
      dirty_ = false;
      work_.query += n * n * n;
    } else {
      ++work_.query;
    }
    return sampling() ? value_ / (1.0 - opt_.epsilon) : value_;
  }

  const Graph& sample() const { return sample_; }

 private:
  bool sampling() const { return opt_.rho < 1.0; }

  void Insert(Vertex u, Vertex v, double w) {
    double kept = w;
    if (sampling()) {
      const double units = std::round(w);
      if (units != w || units < 1) throw InvalidArgument("sampled min cut needs integer weights");
      kept = static_cast<double>(Binomial(rng_, static_cast<std::uint64_t>(units), opt_.rho)) / opt_.rho;
    }
    if (kept > 0.0) {
      sample_.AddEdge(u, v, kept);
      // No cut decreases; one not crossed by the edge keeps its value.
      if (Crosses(u, v)) dirty_ = true;
    }
  }

  bool Crosses(Vertex u, Vertex v) const { return witness_.empty() || witness_[u] != witness_[v]; }

  MinCutOptions opt_;
  Rng rng_;
  Graph sample_;
  bool dirty_ = true;
  double value_ = 0.0;
  std::vector<bool> witness_;  // side of a minimum cut of sample_ while !dirty_
};

}  // namespace robustdyn::estimators
