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
#include <utility>
#include <variant>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/common/work.hpp"
#include "robustdyn/estimators/problem.hpp"
#include "robustdyn/graph/oracles.hpp"
#include "robustdyn/sparsify/decomposition.hpp"
#include "robustdyn/sparsify/handle.hpp"
#include "robustdyn/wrapper/aggregator.hpp"
#include "robustdyn/wrapper/params.hpp"
#include "robustdyn/wrapper/robust_wrapper.hpp"

namespace robustdyn::wrapper {

struct PipelineOptions {
  estimators::Problem problem = estimators::Problem::kMinCut;
  double epsilon = 0.25;
  sparsify::SamplingConfig sampling{};
  sparsify::DecompositionConfig decomposition{};
};

// The sparsified robust pipeline. One decomposition of G is maintained;
// copy j answers (1 + eps) times the exact value on its own sparsifier H_j,
// and all H_j come from independent handles issued at the same moment.
//
// A phase ends after T outputs or once cnt has grown by more than T since
// the handles were issued, whichever comes first. At the boundary every
// handle is refreshed on the current decomposition; nothing is rebuilt.
class SparsifiedPipeline {
 public:
  SparsifiedPipeline(PipelineOptions opt, WrapperParams params, std::uint64_t seed)
      : opt_(std::move(opt)), params_(std::move(params)), seed_(seed) {
    internal::Require(opt_.problem == estimators::Problem::kMinCut ||
                          opt_.problem == estimators::Problem::kEffectiveResistance,
                      "pipeline supports min cut and effective resistance");
    internal::Require(opt_.epsilon > 0.0 && opt_.epsilon < 1.0, "epsilon must lie in (0,1)");
    opt_.sampling.epsilon = opt_.epsilon;
    opt_.sampling.phi = opt_.decomposition.phi;
  }

  const WrapperParams& params() const { return params_; }
  const estimators::Instance& instance() const { return x_; }
  const sparsify::ExpanderDecomposition& decomposition() const { return *d_; }
  const sparsify::SparsifierHandle& handle(std::size_t j) const { return handles_[j]; }
  std::size_t copies() const { return handles_.size(); }
  double copy_gamma() const { return (1 + opt_.epsilon) * (1 + opt_.epsilon); }
  double output_gamma() const { return copy_gamma() * (1.0 + params_.alpha); }
  std::uint64_t phase() const { return phase_; }
  std::uint64_t steps_in_phase() const { return queries_in_phase_; }
  std::uint64_t clamped() const { return clamped_; }
  // Total handle issue work at each phase start; entry 0 is the initial issue.
  const std::vector<std::uint64_t>& refresh_work() const { return refresh_work_; }
  std::uint64_t decompose_work() const { return d_->preprocess_work(); }
  WorkCounters work() const { return work_; }

  void Init(const estimators::Instance& x) {
    x_ = x;
    phase_ = 0;
    clamped_ = 0;
    refresh_work_.clear();
    work_ = {};
    d_ = std::make_unique<sparsify::ExpanderDecomposition>(
        sparsify::ExpanderDecomposition::Decompose(x.graph, opt_.decomposition));
    work_.preprocess += d_->preprocess_work();
    decomp_work_seen_ = d_->update_work();
    handles_.clear();
    handles_.reserve(params_.c);
    std::uint64_t issued = 0;
    for (std::uint64_t j = 0; j < params_.c; ++j) {
      handles_.push_back(sparsify::Sparsify(*d_, params_.T, opt_.sampling, HandleRng(j)));
      issued += handles_.back().issue_work();
    }
    work_.preprocess += issued;
    refresh_work_.push_back(issued);
    StartPhase();
  }

  void Update(const estimators::Update& up) {
    if (std::holds_alternative<estimators::SumUpdate>(up)) {
      throw InvalidUpdate("pipeline takes graph or pair updates");
    }
    estimators::ApplyUpdate(x_, up);
    ++work_.update;
    const auto* gu = std::get_if<GraphUpdate>(&up);
    if (!gu) {
      for (auto& v : cached_) v.reset();
      return;
    }
    const auto r = d_->Apply(*gu);
    work_.update += d_->update_work() - decomp_work_seen_;
    decomp_work_seen_ = d_->update_work();
    if (handles_.front().exhausted()) {
      Refresh();
      return;
    }
    for (std::size_t j = 0; j < handles_.size(); ++j) {
      const auto before = handles_[j].maintain_work();
      if (!handles_[j].Maintain(r).empty()) cached_[j].reset();
      work_.update += handles_[j].maintain_work() - before;
    }
  }

  double Query() {
    const auto r = aggregator_->Aggregate([&](std::uint64_t j) { return Answer(j); });
    work_.query += r.work;
    clamped_ += r.clamped;
    if (++queries_in_phase_ >= params_.T) Refresh();
    return r.value;
  }

  // True once after each refresh; marks where a blinking adversary's view ends.
  bool TakeRefreshEvent() { return std::exchange(refresh_event_, false); }

  // Every copy's current answer, uncharged. Instrumentation only.
  std::vector<double> ProbeAllCopies() {
    const WorkCounters saved = work_;
    std::vector<double> out;
    out.reserve(handles_.size());
    for (std::size_t j = 0; j < handles_.size(); ++j) out.push_back(Answer(j));
    work_ = saved;
    return out;
  }

 private:
  Rng HandleRng(std::size_t j) const { return Rng(DeriveSeed(seed_, phase_ + 1, j)); }

  void Refresh() {
    ++phase_;
    std::uint64_t issued = 0;
    for (std::size_t j = 0; j < handles_.size(); ++j) {
      handles_[j] = handles_[j].Refresh(HandleRng(j));
      issued += handles_[j].issue_work();
    }
    work_.preprocess += issued;
    refresh_work_.push_back(issued);
    StartPhase();
    refresh_event_ = true;
  }

  void StartPhase() {
    queries_in_phase_ = 0;
    cached_.assign(handles_.size(), std::nullopt);
    aggregator_.emplace(params_.grid, params_.s, params_.c, params_.eps_med,
                        Rng(DeriveSeed(seed_, 0, phase_)));
  }

  double Answer(std::size_t j) {
    if (cached_[j]) {
      ++work_.query;
      return *cached_[j];
    }
    const Graph& h = handles_[j].graph();
    const auto n = static_cast<std::uint64_t>(h.num_vertices());
    work_.query += n * n * n + 1;
    double v;
    if (opt_.problem == estimators::Problem::kMinCut) {
      v = graph::MinCutExact(h).value;
    } else if (x_.src == x_.snk) {
      v = 0.0;
    } else {
      try {
        v = graph::EffectiveResistance(h, x_.src, x_.snk);
      } catch (const InfiniteResistance&) {
        v = graph::kInfinity;
      }
    }
    cached_[j] = (1.0 + opt_.epsilon) * v;
    return *cached_[j];
  }

  PipelineOptions opt_;
  WrapperParams params_;
  std::uint64_t seed_;
  estimators::Instance x_;
  std::unique_ptr<sparsify::ExpanderDecomposition> d_;
  std::vector<sparsify::SparsifierHandle> handles_;
  std::vector<std::optional<double>> cached_;
  std::optional<Aggregator> aggregator_;
  std::uint64_t decomp_work_seen_ = 0;
  std::uint64_t phase_ = 0;
  std::uint64_t queries_in_phase_ = 0;
  std::uint64_t clamped_ = 0;
  std::vector<std::uint64_t> refresh_work_;
  bool refresh_event_ = false;
  WorkCounters work_;
};

}  // namespace robustdyn::wrapper
