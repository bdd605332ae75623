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
#include <string>
#include <utility>
#include <vector>

#include "robustdyn/common/random.hpp"
#include "robustdyn/common/work.hpp"
#include "robustdyn/estimators/estimator.hpp"
#include "robustdyn/estimators/problem.hpp"
#include "robustdyn/wrapper/pipeline.hpp"
#include "robustdyn/wrapper/robust_wrapper.hpp"
#include "robustdyn/wrapper/worst_case.hpp"

namespace robustdyn::harness {

using estimators::Instance;
using estimators::Problem;
using estimators::Update;

// The algorithm side of the game. A step applies an optional update and then
// releases one output.
class GameAlgorithm {
 public:
  virtual ~GameAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual Problem problem() const = 0;
  // Outputs are judged against g <= z <= gamma() * g.
  virtual double gamma() const = 0;
  virtual void Init(const Instance& x) = 0;
  virtual double Step(const std::optional<Update>& up) = 0;
  virtual WorkCounters work() const = 0;
  // True once after each refresh of the algorithm's randomness.
  virtual bool TakeRefreshEvent() { return false; }
  virtual std::uint64_t recommits() const { return 0; }

  // Instrumentation: each copy's current answer and the per-copy gamma.
  // Empty for single-copy algorithms.
  virtual std::vector<double> ProbeCopies() { return {}; }
  virtual double copy_gamma() const { return gamma(); }
};

// One oblivious estimator, unprotected.
class SingleCopy final : public GameAlgorithm {
 public:
  SingleCopy(estimators::EstimatorFactory factory, std::uint64_t seed)
      : est_(factory()), seed_(seed) {}

  std::string name() const override { return "single:" + est_->spec().name; }
  Problem problem() const override { return est_->spec().problem; }
  double gamma() const override { return est_->spec().gamma; }
  void Init(const Instance& x) override { est_->Init(x, Rng(seed_)); }
  double Step(const std::optional<Update>& up) override {
    if (up) est_->Update(*up);
    return est_->Query();
  }
  WorkCounters work() const override { return est_->work(); }
  std::uint64_t recommits() const override { return est_->recommits(); }
  const estimators::Estimator& estimator() const { return *est_; }

 private:
  std::unique_ptr<estimators::Estimator> est_;
  std::uint64_t seed_;
};

class Wrapped final : public GameAlgorithm {
 public:
  Wrapped(estimators::EstimatorFactory factory, wrapper::WrapperParams params, std::uint64_t seed)
      : spec_(factory()->spec()), w_(std::move(factory), std::move(params), seed) {}

  std::string name() const override { return "wrapped:" + spec_.name; }
  Problem problem() const override { return spec_.problem; }
  double gamma() const override { return spec_.gamma * (1.0 + w_.params().alpha); }
  void Init(const Instance& x) override { w_.Init(x); }
  double Step(const std::optional<Update>& up) override {
    if (up) w_.Update(*up);
    return w_.Query();
  }
  WorkCounters work() const override { return w_.work(); }
  bool TakeRefreshEvent() override { return w_.TakeRefreshEvent(); }
  std::uint64_t recommits() const override {
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < w_.copies(); ++j) total += w_.copy(j).recommits();
    return total;
  }
  std::vector<double> ProbeCopies() override { return w_.ProbeAllCopies(); }
  double copy_gamma() const override { return spec_.gamma; }
  const wrapper::RobustWrapper& wrapper() const { return w_; }

 private:
  estimators::EstimatorSpec spec_;
  wrapper::RobustWrapper w_;
};

class Staggered final : public GameAlgorithm {
 public:
  Staggered(estimators::EstimatorFactory factory, wrapper::WrapperParams params,
            std::uint64_t seed)
      : spec_(factory()->spec()), w_(std::move(factory), std::move(params), seed) {}

  std::string name() const override { return "worst-case:" + spec_.name; }
  Problem problem() const override { return spec_.problem; }
  double gamma() const override { return spec_.gamma * (1.0 + w_.params().alpha); }
  void Init(const Instance& x) override { w_.Init(x); }
  double Step(const std::optional<Update>& up) override {
    internal::Require(up.has_value(), "worst-case wrapper steps need an update");
    return w_.Step(*up);
  }
  WorkCounters work() const override { return w_.work(); }
  double copy_gamma() const override { return spec_.gamma; }
  const wrapper::WorstCaseWrapper& wrapper() const { return w_; }

 private:
  estimators::EstimatorSpec spec_;
  wrapper::WorstCaseWrapper w_;
};

class Pipeline final : public GameAlgorithm {
 public:
  Pipeline(wrapper::PipelineOptions opt, wrapper::WrapperParams params, std::uint64_t seed)
      : problem_(opt.problem), p_(std::move(opt), std::move(params), seed) {}

  std::string name() const override {
    return std::string("pipeline:") + estimators::ProblemName(problem_);
  }
  Problem problem() const override { return problem_; }
  double gamma() const override { return p_.output_gamma(); }
  void Init(const Instance& x) override { p_.Init(x); }
  double Step(const std::optional<Update>& up) override {
    if (up) p_.Update(*up);
    return p_.Query();
  }
  WorkCounters work() const override { return p_.work(); }
  bool TakeRefreshEvent() override { return p_.TakeRefreshEvent(); }
  std::vector<double> ProbeCopies() override { return p_.ProbeAllCopies(); }
  double copy_gamma() const override { return p_.copy_gamma(); }
  const wrapper::SparsifiedPipeline& pipeline() const { return p_; }

 private:
  Problem problem_;
  wrapper::SparsifiedPipeline p_;
};

}  // namespace robustdyn::harness
