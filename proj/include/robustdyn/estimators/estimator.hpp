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
#include <functional>
#include <memory>
#include <string>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/common/work.hpp"
#include "robustdyn/estimators/problem.hpp"

namespace robustdyn::estimators {

struct EstimatorSpec {
  std::string name;
  Problem problem = Problem::kSum;
  // Answers z satisfy g <= z <= gamma * g with probability >= 9/10 against
  // an oblivious update sequence.
  double gamma = 1.0;
  bool refresh_capable = false;
};

// A randomized dynamic estimator that is correct against oblivious update
// sequences. Work counters only ever grow, including across Reset.
class Estimator {
 public:
  virtual ~Estimator() = default;

  virtual EstimatorSpec spec() const = 0;
  virtual void Init(const Instance& x, Rng rng) = 0;
  virtual void Update(const Update& up) = 0;
  virtual double Query() = 0;

  // Fresh randomness on the current input.
  virtual void Reset(const Instance& x, Rng rng) { Init(x, std::move(rng)); }
  // Cheap re-randomization without rebuilding; only when refresh_capable.
  virtual void Refresh(Rng) { throw Error(spec().name + " is not refresh-capable"); }
  // Times the estimator re-drew a random choice because an update destroyed it.
  virtual std::uint64_t recommits() const { return 0; }

  // Monotone across Init, Reset and Refresh.
  const WorkCounters& work() const { return work_; }

  // Query for instrumentation; leaves the work counters untouched.
  double Probe() {
    const WorkCounters saved = work_;
    const double z = Query();
    work_ = saved;
    return z;
  }

 protected:
  WorkCounters work_;
};

using EstimatorFactory = std::function<std::unique_ptr<Estimator>()>;

// g <= z <= gamma * g, with the g = 0 and negative cases read literally.
inline bool IsAccurate(double g, double z, double gamma) {
  if (g >= 0.0) return z >= g && z <= gamma * g;
  return z >= g && z <= g / gamma;
}

}  // namespace robustdyn::estimators
