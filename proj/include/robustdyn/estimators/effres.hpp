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
#include <memory>
#include <optional>
#include <variant>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/estimators/estimator.hpp"
#include "robustdyn/graph/oracles.hpp"
#include "robustdyn/sparsify/decomposition.hpp"
#include "robustdyn/sparsify/handle.hpp"

namespace robustdyn::estimators {

struct EffResOptions {
  // Zero selects exact mode: no sparsifier, answers R_G.
  double epsilon = 0.25;
  double phi = 0.1;
  double oversample = 0.0;
  sparsify::DecompositionConfig decomposition{};
};

// Answers (1 + eps) R_H(src, snk) on a sparsifier H of a privately
// maintained decomposition. Refresh re-samples H without redecomposing.
class EffResEstimator final : public Estimator {
 public:
  explicit EffResEstimator(EffResOptions opt) : opt_(opt) {
    internal::Require(opt.epsilon >= 0.0 && opt.epsilon < 1.0, "epsilon must lie in [0,1)");
    opt_.decomposition.phi = opt.phi;
  }

  EstimatorSpec spec() const override {
    const double gamma = (1 + opt_.epsilon) * (1 + opt_.epsilon);
    return {"effres", Problem::kEffectiveResistance, gamma, true};
  }

  void Init(const Instance& x, Rng rng) override {
    src_ = x.src;
    snk_ = x.snk;
    handle_.reset();
    if (exact()) {
      exact_graph_ = x.graph;
      work_.preprocess += x.graph.num_edges() + 1;
      return;
    }
    decomposition_ = std::make_unique<sparsify::ExpanderDecomposition>(
        sparsify::ExpanderDecomposition::Decompose(x.graph, opt_.decomposition));
    work_.preprocess += decomposition_->preprocess_work();
    Issue(std::move(rng));
    decomp_work_seen_ = decomposition_->update_work();
  }

  void Refresh(Rng rng) override {
    if (exact()) return;
    Issue(std::move(rng));
  }

  void Update(const estimators::Update& up) override {
    ++work_.update;
    if (const auto* pu = std::get_if<PairUpdate>(&up)) {
      src_ = pu->src;
      snk_ = pu->snk;
      return;
    }
    const auto* gu = std::get_if<GraphUpdate>(&up);
    if (!gu) throw InvalidUpdate("effres estimator takes graph or pair updates");
    if (exact()) {
      graph::ApplyUpdate(exact_graph_, *gu);
      return;
    }
    const auto r = decomposition_->Apply(*gu);
    const auto before = handle_->maintain_work();
    handle_->Maintain(r);
    work_.update += (decomposition_->update_work() - decomp_work_seen_) +
                    (handle_->maintain_work() - before);
    decomp_work_seen_ = decomposition_->update_work();
  }

  double Query() override {
    const Graph& h = exact() ? exact_graph_ : handle_->graph();
    const auto n = static_cast<std::uint64_t>(h.num_vertices());
    work_.query += n * n * n / 3 + 1;
    if (src_ == snk_) return 0.0;
    try {
      return (1.0 + opt_.epsilon) * graph::EffectiveResistance(h, src_, snk_);
    } catch (const InfiniteResistance&) {
      return graph::kInfinity;
    }
  }

  const Graph& sparsifier() const { return exact() ? exact_graph_ : handle_->graph(); }

 private:
  bool exact() const { return opt_.epsilon == 0.0; }

  void Issue(Rng rng) {
    sparsify::SamplingConfig cfg;
    cfg.epsilon = opt_.epsilon;
    cfg.phi = opt_.phi;
    cfg.oversample = opt_.oversample;
    handle_.emplace(*decomposition_, sparsify::SparsifierHandle::kUnlimited, cfg, std::move(rng));
    work_.preprocess += handle_->issue_work();
  }

  EffResOptions opt_;
  Vertex src_ = 0;
  Vertex snk_ = 0;
  Graph exact_graph_;
  std::unique_ptr<sparsify::ExpanderDecomposition> decomposition_;
  std::optional<sparsify::SparsifierHandle> handle_;
  std::uint64_t decomp_work_seen_ = 0;
};

}  // namespace robustdyn::estimators
