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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/estimators/problem.hpp"

namespace robustdyn::harness {

using estimators::Instance;
using estimators::Update;

// What the adversary sees: the initial input, its updates, the outputs, and
// where the algorithm refreshed. Nothing else about the algorithm is stored.
class Transcript {
 public:
  struct Entry {
    std::optional<Update> update;  // nullopt: output-only step
    double output = 0.0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Transcript() = default;
  explicit Transcript(Instance x0) : x0_(std::move(x0)) {}

  const Instance& initial() const { return x0_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }
  // Entry counts at which a refresh happened: a boundary b means entries
  // [0, b) were released before the refresh.
  const std::vector<std::size_t>& refresh_boundaries() const { return boundaries_; }

  void Append(std::optional<Update> up, double output) {
    entries_.push_back({std::move(up), output});
  }
  void MarkRefresh() {
    if (boundaries_.empty() || boundaries_.back() != entries_.size()) {
      boundaries_.push_back(entries_.size());
    }
  }

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  Instance x0_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> boundaries_;
};

enum class AdversaryModel { kOblivious, kAdaptive, kBlinking };

inline const char* ModelName(AdversaryModel m) {
  switch (m) {
    case AdversaryModel::kOblivious: return "oblivious";
    case AdversaryModel::kAdaptive: return "adaptive";
    case AdversaryModel::kBlinking: return "blinking";
  }
  return "?";
}

// The prefix of the outputs an adversary may read. The adversary always
// knows its own updates; only outputs are withheld.
class TranscriptView {
 public:
  TranscriptView(const Transcript& t, AdversaryModel model) : t_(&t), model_(model) {
    switch (model) {
      case AdversaryModel::kOblivious: visible_ = 0; break;
      case AdversaryModel::kAdaptive: visible_ = t.size(); break;
      case AdversaryModel::kBlinking:
        visible_ = t.refresh_boundaries().empty() ? 0 : t.refresh_boundaries().back();
        break;
    }
  }

  AdversaryModel model() const { return model_; }
  const Instance& initial() const { return t_->initial(); }
  // Steps taken so far, visible or not.
  std::size_t steps() const { return t_->size(); }
  std::size_t visible_outputs() const { return visible_; }
  bool visible(std::size_t i) const { return i < visible_; }

  double output(std::size_t i) const {
    if (!visible(i)) throw Error("output outside the adversary's view");
    return (*t_)[i].output;
  }
  const std::optional<Update>& update(std::size_t i) const { return (*t_)[i].update; }

 private:
  const Transcript* t_;
  AdversaryModel model_;
  std::size_t visible_ = 0;
};

}  // namespace robustdyn::harness
