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
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/common/work.hpp"
#include "robustdyn/estimators/estimator.hpp"
#include "robustdyn/wrapper/aggregator.hpp"
#include "robustdyn/wrapper/params.hpp"

namespace robustdyn::wrapper {

using estimators::Estimator;
using estimators::EstimatorFactory;
using estimators::Instance;
using estimators::Update;
using graph::Graph;
using graph::GraphUpdate;
using graph::Vertex;

// c copies of one oblivious estimator. Work is accumulated as per-call deltas
// of the copies' counters, which never decrease.
class CopyFarm {
 public:
  CopyFarm() = default;
  CopyFarm(EstimatorFactory factory, std::uint64_t c) : factory_(std::move(factory)), c_(c) {
    internal::Require(c >= 1, "c must be positive");
  }

  std::uint64_t capacity() const { return c_; }
  std::size_t built() const { return copies_.size(); }
  bool complete() const { return copies_.size() == c_; }
  Estimator& copy(std::size_t j) { return *copies_[j]; }
  const Estimator& copy(std::size_t j) const { return *copies_[j]; }
  const WorkCounters& work() const { return work_; }
  void AddQueryWork(std::uint64_t units) { work_.query += units; }

  void Clear() { copies_.clear(); }

  // Builds the next copy on x; copies are built in index order.
  void BuildNext(const Instance& x, Rng rng) {
    internal::Require(!complete(), "all copies are already built");
    auto est = factory_();
    est->Init(x, std::move(rng));
    work_ += est->work();
    copies_.push_back(std::move(est));
  }

  void UpdateAll(const Update& up) {
    for (auto& est : copies_) Tracked(*est, [&](Estimator& e) { e.Update(up); });
  }

  // Reset on x, or Refresh when the estimator supports it. Returns true if
  // every copy was refreshed rather than reset.
  template <class RngFor>
  bool RenewAll(const Instance& x, RngFor&& rng_for) {
    bool refreshed = !copies_.empty();
    for (std::size_t j = 0; j < copies_.size(); ++j) {
      Estimator& est = *copies_[j];
      if (est.spec().refresh_capable) {
        Tracked(est, [&](Estimator& e) { e.Refresh(rng_for(j)); });
      } else {
        refreshed = false;
        Tracked(est, [&](Estimator& e) { e.Reset(x, rng_for(j)); });
      }
    }
    return refreshed;
  }

  double Answer(std::size_t j) {
    double z = 0.0;
    Tracked(*copies_[j], [&](Estimator& e) { z = e.Query(); });
    return z;
  }

  std::vector<double> ProbeAll() {
    std::vector<double> out;
    out.reserve(copies_.size());
    for (auto& est : copies_) out.push_back(est->Probe());
    return out;
  }

 private:
  template <class Op>
  void Tracked(Estimator& est, Op&& op) {
    const WorkCounters before = est.work();
    op(est);
    work_ += est.work() - before;
  }

  EstimatorFactory factory_;
  std::uint64_t c_ = 0;
  std::vector<std::unique_ptr<Estimator>> copies_;
  WorkCounters work_;
};

// The robust reduction: c copies fed identical updates; every output is the
// private median of s hidden-index samples. Each query counts as one step
// toward the phase length T; updates alone do not consume budget.
class RobustWrapper {
 public:
  RobustWrapper(EstimatorFactory factory, WrapperParams params, std::uint64_t seed,
                bool auto_restart = true)
      : params_(std::move(params)),
        seed_(seed),
        auto_restart_(auto_restart),
        farm_(std::move(factory), params_.c) {}

  const WrapperParams& params() const { return params_; }
  const Instance& instance() const { return x_; }
  estimators::EstimatorSpec copy_spec() const { return farm_.copy(0).spec(); }
  // Outputs satisfy g <= out <= output_gamma() * g on accurate steps.
  double output_gamma() const { return copy_spec().gamma * (1.0 + params_.alpha); }
  std::uint64_t phase() const { return phase_; }
  std::uint64_t steps_in_phase() const { return queries_in_phase_; }
  std::uint64_t restarts() const { return restarts_; }
  std::uint64_t clamped() const { return clamped_; }
  bool last_clamped() const { return last_clamped_; }
  std::size_t copies() const { return farm_.built(); }
  const Estimator& copy(std::size_t j) const { return farm_.copy(j); }
  WorkCounters work() const { return farm_.work(); }
  bool phase_exhausted() const { return queries_in_phase_ >= params_.T; }

  void Init(const Instance& x) {
    x_ = x;
    phase_ = 0;
    restarts_ = 0;
    clamped_ = 0;
    farm_.Clear();
    for (std::uint64_t j = 0; j < params_.c; ++j) farm_.BuildNext(x_, CopyRng(j));
    StartPhase();
  }

  void Update(const Update& up) {
    RequireLive();
    estimators::ApplyUpdate(x_, up);
    farm_.UpdateAll(up);
  }

  double Query() {
    RequireLive();
    const auto r = aggregator_->Aggregate([&](std::uint64_t j) { return farm_.Answer(j); });
    farm_.AddQueryWork(r.work);
    clamped_ += r.clamped;
    last_clamped_ = r.clamped > 0;
    ++queries_in_phase_;
    if (auto_restart_ && phase_exhausted()) Restart();
    return r.value;
  }

  // Fresh randomness for every copy on the current input.
  void Restart() {
    ++phase_;
    ++restarts_;
    last_refreshed_ = farm_.RenewAll(x_, [&](std::size_t j) { return CopyRng(j); });
    StartPhase();
    refresh_event_ = true;
  }

  // Replaces the input outright, then restarts.
  void Restart(const Instance& x) {
    x_ = x;
    ++phase_;
    ++restarts_;
    farm_.Clear();
    for (std::uint64_t j = 0; j < params_.c; ++j) farm_.BuildNext(x_, CopyRng(j));
    last_refreshed_ = false;
    StartPhase();
    refresh_event_ = true;
  }

  // True once after each restart; marks where a blinking adversary's view ends.
  bool TakeRefreshEvent() { return std::exchange(refresh_event_, false); }
  bool last_restart_refreshed() const { return last_refreshed_; }

  // Every copy's current answer. Instrumentation only: no work is charged
  // and nothing here reaches the transcript.
  std::vector<double> ProbeAllCopies() { return farm_.ProbeAll(); }

 private:
  Rng CopyRng(std::size_t j) const { return Rng(DeriveSeed(seed_, phase_ + 1, j)); }

  void StartPhase() {
    queries_in_phase_ = 0;
    aggregator_.emplace(params_.grid, params_.s, params_.c, params_.eps_med,
                        Rng(DeriveSeed(seed_, 0, phase_)));
  }

  void RequireLive() const {
    if (phase_exhausted()) throw PhaseExhausted("phase exhausted; restart required");
  }

  WrapperParams params_;
  std::uint64_t seed_;
  bool auto_restart_;
  CopyFarm farm_;
  std::optional<Aggregator> aggregator_;
  Instance x_;
  std::uint64_t phase_ = 0;
  std::uint64_t queries_in_phase_ = 0;
  std::uint64_t restarts_ = 0;
  std::uint64_t clamped_ = 0;
  bool last_clamped_ = false;
  bool refresh_event_ = false;
  bool last_refreshed_ = false;
};

}  // namespace robustdyn::wrapper
