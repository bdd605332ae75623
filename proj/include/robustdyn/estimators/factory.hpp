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

#include <memory>
#include <string>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/estimators/effres.hpp"
#include "robustdyn/estimators/estimator.hpp"
#include "robustdyn/estimators/landmark.hpp"
#include "robustdyn/estimators/mincut.hpp"
#include "robustdyn/estimators/sum.hpp"

namespace robustdyn::estimators {

struct EstimatorOptions {
  std::string kind = "sum";  // mincut | effres | distance | sum
  double epsilon = 0.25;
  double rho = 1.0;          // mincut sampling rate
  double rate = 1.0;         // sum sampling rate
  std::size_t landmarks = 4;
  double phi = 0.1;
  double oversample = 0.0;
};

inline EstimatorFactory MakeFactory(const EstimatorOptions& o) {
  if (o.kind == "mincut") {
    return [o] { return std::make_unique<MinCutEstimator>(MinCutOptions{o.rho, o.epsilon}); };
  }
  if (o.kind == "effres") {
    return [o] {
      EffResOptions e;
      e.epsilon = o.epsilon;
      e.phi = o.phi;
      e.oversample = o.oversample;
      return std::make_unique<EffResEstimator>(e);
    };
  }
  if (o.kind == "distance") {
    return [o] { return std::make_unique<LandmarkDistanceEstimator>(LandmarkOptions{o.landmarks}); };
  }
  if (o.kind == "sum") {
    return [o] { return std::make_unique<SubsampleSumEstimator>(SumOptions{o.rate, o.epsilon}); };
  }
  throw InvalidArgument("unknown estimator kind: " + o.kind);
}

}  // namespace robustdyn::estimators
