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
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/common/work.hpp"
#include "robustdyn/wrapper/aggregator.hpp"
#include "robustdyn/wrapper/params.hpp"
#include "robustdyn/wrapper/robust_wrapper.hpp"

namespace robustdyn::wrapper {

// Two copy farms alternate phases. While the active farm answers phase k, the
// standby farm builds its c copies from the input at the start of phase k,
// spread over the first floor(T/2) steps, then catches up on the buffered
// updates two per step. The buffer is empty when phase k ends, so the
// standby takes over for phase k+1 without a rebuild spike.
//
// Every step is one update followed by one output.
class WorstCaseWrapper {
 public:
  WorstCaseWrapper(EstimatorFactory factory, WrapperParams params, std::uint64_t seed)
      : params_(std::move(params)),
        seed_(seed),
        farms_{CopyFarm(factory, params_.c), CopyFarm(factory, params_.c)} {
    internal::Require(params_.T >= 2, "worst-case wrapper needs T >= 2");
    build_steps_ = params_.T / 2;
  }

  const WrapperParams& params() const { return params_; }
  const Instance& instance() const { return x_; }
  std::uint64_t phase() const { return phase_; }
  std::uint64_t steps_in_phase() const { return step_; }
  double output_gamma() const {
    return active().copy(0).spec().gamma * (1.0 + params_.alpha);
  }
  WorkCounters work() const {
    WorkCounters w = farms_[0].work();
    w += farms_[1].work();
    return w;
  }
  // Work charged to each step so far, both farms included.
  const std::vector<std::uint64_t>& step_work() const { return step_work_; }

  // Builds the farm for phase 0 in full; this is preprocessing, not step work.
  void Init(const Instance& x) {
    x_ = x;
    phase_ = 0;
    step_work_.clear();
    active_ = 0;
    for (auto& f : farms_) f.Clear();
    for (std::uint64_t j = 0; j < params_.c; ++j) active_farm().BuildNext(x_, CopyRng(0, j));
    BeginPhase();
  }

  double Step(const Update& up) {
    const std::uint64_t before = work().total();
    estimators::ApplyUpdate(x_, up);
    active_farm().UpdateAll(up);
    buffer_.push_back(up);
    CopyFarm& standby = standby_farm();
    if (step_ < build_steps_) {
      // Copies [lo, hi) are built at this step.
      const std::uint64_t lo = params_.c * step_ / build_steps_;
      const std::uint64_t hi = params_.c * (step_ + 1) / build_steps_;
      for (std::uint64_t j = lo; j < hi; ++j) standby.BuildNext(snapshot_, CopyRng(phase_ + 1, j));
    } else {
      for (int k = 0; k < 2 && !buffer_.empty(); ++k) {
        standby.UpdateAll(buffer_.front());
        buffer_.pop_front();
      }
    }
    const auto r = aggregator_->Aggregate([&](std::uint64_t j) { return active_farm().Answer(j); });
    active_farm().AddQueryWork(r.work);
    step_work_.push_back(work().total() - before);
    if (++step_ == params_.T) {
      // Invariant: the standby is complete and has seen every update.
      active_ ^= 1;
      ++phase_;
      BeginPhase();
    }
    return r.value;
  }

 private:
  CopyFarm& active_farm() { return farms_[active_]; }
  const CopyFarm& active() const { return farms_[active_]; }
  CopyFarm& standby_farm() { return farms_[active_ ^ 1]; }

  Rng CopyRng(std::uint64_t phase, std::size_t j) const {
    return Rng(DeriveSeed(seed_, phase + 1, j));
  }

  void BeginPhase() {
    step_ = 0;
    snapshot_ = x_;
    buffer_.clear();
    standby_farm().Clear();
    aggregator_.emplace(params_.grid, params_.s, params_.c, params_.eps_med,
                        Rng(DeriveSeed(seed_, 0, phase_)));
  }

  WrapperParams params_;
  std::uint64_t seed_;
  CopyFarm farms_[2];
  int active_ = 0;
  std::uint64_t build_steps_ = 1;
  std::optional<Aggregator> aggregator_;
  Instance x_;
  Instance snapshot_;
  std::deque<Update> buffer_;
  std::uint64_t phase_ = 0;
  std::uint64_t step_ = 0;
  std::vector<std::uint64_t> step_work_;
};

}  // namespace robustdyn::wrapper
