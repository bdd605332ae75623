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
#include <optional>
#include <string>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/work.hpp"
#include "robustdyn/estimators/estimator.hpp"
#include "robustdyn/harness/algorithm.hpp"
#include "robustdyn/harness/transcript.hpp"

namespace robustdyn::harness {

class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual std::string name() const = 0;
  virtual AdversaryModel model() const = 0;
  // The next update, or nullopt for an output-only step. `current` is the
  // input after every update issued so far, which the adversary knows anyway.
  virtual std::optional<Update> Next(const TranscriptView& view, const Instance& current) = 0;
};

// Replays a fixed script; output-only steps once the script runs out.
class ScriptAdversary final : public Adversary {
 public:
  explicit ScriptAdversary(std::vector<std::optional<Update>> script)
      : script_(std::move(script)) {}

  template <class Range>
  static ScriptAdversary FromUpdates(const Range& updates) {
    std::vector<std::optional<Update>> s;
    for (const auto& up : updates) s.emplace_back(up);
    return ScriptAdversary(std::move(s));
  }

  std::string name() const override { return "script"; }
  AdversaryModel model() const override { return AdversaryModel::kOblivious; }
  std::optional<Update> Next(const TranscriptView& view, const Instance&) override {
    const std::size_t t = view.steps();
    return t < script_.size() ? script_[t] : std::nullopt;
  }

 private:
  std::vector<std::optional<Update>> script_;
};

struct StepRecord {
  std::uint64_t step = 0;
  double truth = 0.0;
  double output = 0.0;
  bool accurate = false;
  // Fraction of copies that are copy_gamma-accurate; negative when not
  // measured.
  double copy_fraction = -1.0;
  WorkCounters work;
  std::uint64_t recommits = 0;
  bool refresh = false;
};

struct GameOptions {
  std::uint64_t steps = 100;
  bool measure_copies = false;
};

struct GameResult {
  std::string algorithm;
  std::string adversary;
  AdversaryModel model = AdversaryModel::kOblivious;
  Transcript transcript;
  std::vector<StepRecord> records;
  std::optional<std::string> violation;

  double accuracy_frequency() const {
    if (records.empty()) return 1.0;
    std::uint64_t ok = 0;
    for (const auto& r : records) ok += r.accurate;
    return static_cast<double>(ok) / static_cast<double>(records.size());
  }
  bool all_accurate() const {
    for (const auto& r : records) {
      if (!r.accurate) return false;
    }
    return true;
  }
  // Steps whose copy fraction was measured and fell below `level`.
  std::uint64_t copy_fraction_below(double level) const {
    std::uint64_t bad = 0;
    for (const auto& r : records) bad += r.copy_fraction >= 0.0 && r.copy_fraction < level;
    return bad;
  }
};

// Fraction of answers z_j with g <= z_j <= gamma * g.
inline double AccurateFraction(const std::vector<double>& answers, double g, double gamma) {
  if (answers.empty()) return -1.0;
  std::uint64_t ok = 0;
  for (double z : answers) ok += estimators::IsAccurate(g, z, gamma);
  return static_cast<double>(ok) / static_cast<double>(answers.size());
}

// The two-player loop: the adversary picks an update from its permitted
// view, the algorithm answers, the exact oracle grades the answer. An
// illegal update ends the game and is recorded as a violation.
inline GameResult RunGame(GameAlgorithm& alg, Adversary& adv, const Instance& x0,
                          const GameOptions& opt) {
  GameResult res;
  res.algorithm = alg.name();
  res.adversary = adv.name();
  res.model = adv.model();
  res.transcript = Transcript(x0);
  res.records.reserve(opt.steps);
  Instance current = x0;
  alg.Init(x0);
  alg.TakeRefreshEvent();
  const Problem problem = alg.problem();
  for (std::uint64_t t = 0; t < opt.steps; ++t) {
    const TranscriptView view(res.transcript, adv.model());
    const auto up = adv.Next(view, current);
    if (up) {
      if (!estimators::IsLegal(current, *up)) {
        res.violation = "step " + std::to_string(t) + ": illegal update " + estimators::Describe(*up);
        break;
      }
      estimators::ApplyUpdate(current, *up);
    }
    StepRecord r;
    r.step = t;
    r.output = alg.Step(up);
    r.truth = estimators::ExactValue(problem, current);
    r.accurate = estimators::IsAccurate(r.truth, r.output, alg.gamma());
    if (opt.measure_copies) {
      r.copy_fraction = AccurateFraction(alg.ProbeCopies(), r.truth, alg.copy_gamma());
    }
    r.work = alg.work();
    r.recommits = alg.recommits();
    res.transcript.Append(up, r.output);
    if (alg.TakeRefreshEvent()) {
      r.refresh = true;
      res.transcript.MarkRefresh();
    }
    res.records.push_back(r);
  }
  return res;
}

}  // namespace robustdyn::harness
