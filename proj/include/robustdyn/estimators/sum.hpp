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
#include <map>
#include <variant>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/estimators/estimator.hpp"

namespace robustdyn::estimators {

struct SumOptions {
  double rate = 1.0;
  double epsilon = 0.2;
};

// Keeps each item with probability `rate` and reports the kept total over
// rate, divided by (1 - eps) when sampling.
class SubsampleSumEstimator final : public Estimator {
 public:
  explicit SubsampleSumEstimator(SumOptions opt) : opt_(opt) {
    internal::Require(opt.rate > 0.0 && opt.rate <= 1.0, "rate must lie in (0,1]");
    internal::Require(opt.epsilon >= 0.0 && opt.epsilon < 1.0, "epsilon must lie in [0,1)");
  }

  EstimatorSpec spec() const override {
    const double gamma = sampling() ? (1 + opt_.epsilon) / (1 - opt_.epsilon) : 1.0;
    return {"sum", Problem::kSum, gamma, false};
  }

  void Init(const Instance& x, Rng rng) override {
    rng_ = std::move(rng);
    kept_.clear();
    kept_total_ = 0.0;
    for (const auto& [id, value] : x.values) Insert(id, value);
    work_.preprocess += x.values.size() + 1;
  }

  void Update(const estimators::Update& up) override {
    const auto* su = std::get_if<SumUpdate>(&up);
    if (!su) throw InvalidUpdate("sum estimator takes item updates only");
    ++work_.update;
    if (su->kind == SumUpdate::Kind::kInsert) {
      Insert(su->id, su->value);
    } else if (auto it = kept_.find(su->id); it != kept_.end()) {
      kept_total_ -= it->second;
      kept_.erase(it);
    }
  }

  double Query() override {
    ++work_.query;
    const double raw = kept_total_ / opt_.rate;
    return sampling() ? raw / (1.0 - opt_.epsilon) : raw;
  }

 private:
  bool sampling() const { return opt_.rate < 1.0; }

  void Insert(std::uint64_t id, double value) {
    if (Bernoulli(rng_, opt_.rate)) {
      kept_.emplace(id, value);
      kept_total_ += value;
    }
  }

  SumOptions opt_;
  Rng rng_;
  std::map<std::uint64_t, double> kept_;
  double kept_total_ = 0.0;
};

}  // namespace robustdyn::estimators
