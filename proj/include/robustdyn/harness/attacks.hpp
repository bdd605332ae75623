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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robustdyn/common/random.hpp"
#include "robustdyn/graph/generators.hpp"
#include "robustdyn/graph/oracles.hpp"
#include "robustdyn/harness/game.hpp"

namespace robustdyn::harness {

using graph::Graph;
using graph::GraphUpdate;
using graph::Vertex;

namespace internal_attack {

inline bool Changed(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a != b;
  return std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a));
}

// Did the output move across the adversary's previous update? Needs the
// outputs just before and just after that update.
inline std::optional<bool> JumpAtLastStep(const TranscriptView& view) {
  const std::size_t t = view.steps();
  if (t < 2 || !view.visible(t - 1)) return std::nullopt;
  return Changed(view.output(t - 2), view.output(t - 1));
}

}  // namespace internal_attack

// Learns which edges of a pool the target sampled from output jumps and
// keeps only those. A pool edge is probed by deleting it: an unchanged
// output means it was not sampled, so it stays deleted; a jump means it was,
// so it is reinserted. At the floor, fresh pool edges are inserted and kept
// only if their insertion moved the output. Against a sampling estimator
// the surviving edges are over-represented in its sample.
class ProbeEdgeAttack final : public Adversary {
 public:
  ProbeEdgeAttack(std::vector<std::pair<Vertex, Vertex>> pool, std::size_t floor, double weight,
                  AdversaryModel model, Rng rng, std::string label = "probe-edge")
      : pool_(std::move(pool)), floor_(floor), weight_(weight), model_(model),
        rng_(std::move(rng)), label_(std::move(label)) {
    std::shuffle(pool_.begin(), pool_.end(), rng_);
  }

  // Bridges of the two-cliques family; the floor keeps the bridge cut the
  // minimum cut.
  static ProbeEdgeAttack MinCut(std::size_t k, std::size_t floor, AdversaryModel model, Rng rng) {
    std::vector<std::pair<Vertex, Vertex>> pool;
    for (std::size_t p = 0; p < k * k; ++p) pool.push_back(graph::TwoCliqueBridge(k, p));
    return ProbeEdgeAttack(std::move(pool), floor, 1.0, model, std::move(rng), "attack-mincut");
  }

  // Edges at the source of an effective-resistance query.
  static ProbeEdgeAttack EffRes(std::size_t n, Vertex src, Vertex snk, std::size_t floor,
                                AdversaryModel model, Rng rng) {
    std::vector<std::pair<Vertex, Vertex>> pool;
    for (Vertex v = 0; v < n; ++v) {
      if (v != src && v != snk) pool.emplace_back(src, v);
    }
    return ProbeEdgeAttack(std::move(pool), floor, 1.0, model, std::move(rng), "attack-effres");
  }

  std::string name() const override { return label_; }
  AdversaryModel model() const override { return model_; }

  std::optional<Update> Next(const TranscriptView& view, const Instance& current) override {
    Learn(view);
    const Graph& g = current.graph;
    std::size_t present = 0;
    for (const auto& e : pool_) present += g.HasEdge(e.first, e.second);

    if (present > floor_) {
      for (const auto& e : pool_) {
        if (g.HasEdge(e.first, e.second) && status(e) == Status::kUnsampled) {
          return Emit(GraphUpdate::Delete(e.first, e.second), e, Probe::kNone);
        }
      }
    }
    if (pending_) {
      const auto e = *std::exchange(pending_, std::nullopt);
      return Emit(GraphUpdate::Insert(e.first, e.second, weight_), e, Probe::kInsert);
    }
    if (present > floor_) {
      for (const auto& e : pool_) {
        if (g.HasEdge(e.first, e.second) && status(e) == Status::kUnknown) {
          return Emit(GraphUpdate::Delete(e.first, e.second), e, Probe::kDelete);
        }
      }
    }
    const std::size_t start = cursor_;
    do {
      const auto e = pool_[cursor_];
      cursor_ = (cursor_ + 1) % pool_.size();
      if (!g.HasEdge(e.first, e.second)) {
        return Emit(GraphUpdate::Insert(e.first, e.second, weight_), e, Probe::kInsert);
      }
    } while (cursor_ != start);
    return std::nullopt;
  }

 private:
  enum class Status { kUnknown, kSampled, kUnsampled };
  enum class Probe { kNone, kDelete, kInsert };
  using Key = std::pair<Vertex, Vertex>;

  Status status(const Key& e) const {
    const auto it = status_.find(e);
    return it == status_.end() ? Status::kUnknown : it->second;
  }

  std::optional<Update> Emit(const GraphUpdate& up, const Key& e, Probe probe) {
    last_ = probe;
    last_edge_ = e;
    return up;
  }

  void Learn(const TranscriptView& view) {
    const Probe probe = std::exchange(last_, Probe::kNone);
    if (probe == Probe::kNone) return;
    const auto jump = internal_attack::JumpAtLastStep(view);
    if (probe == Probe::kDelete) {
      status_.erase(last_edge_);
      if (jump.value_or(false)) pending_ = last_edge_;
      return;
    }
    if (!jump) {
      status_.erase(last_edge_);
    } else {
      status_[last_edge_] = *jump ? Status::kSampled : Status::kUnsampled;
    }
  }

  std::vector<Key> pool_;
  std::size_t floor_;
  double weight_;
  AdversaryModel model_;
  Rng rng_;
  std::string label_;
  std::map<Key, Status> status_;
  std::optional<Key> pending_;
  Probe last_ = Probe::kNone;
  Key last_edge_{};
  std::size_t cursor_ = 0;
};

// Inserts a maximal item; deletes it again if the output rose, keeps it
// otherwise. The kept items are the ones a sampling estimator missed.
class SumAttack final : public Adversary {
 public:
  SumAttack(double vmax, AdversaryModel model, std::uint64_t first_id = 1ULL << 40)
      : vmax_(vmax), model_(model), next_id_(first_id) {}

  std::string name() const override { return "attack-sum"; }
  AdversaryModel model() const override { return model_; }

  std::optional<Update> Next(const TranscriptView& view, const Instance&) override {
    if (last_insert_) {
      const auto id = *std::exchange(last_insert_, std::nullopt);
      const auto jump = internal_attack::JumpAtLastStep(view);
      if (jump.value_or(false) && view.output(view.steps() - 1) > view.output(view.steps() - 2)) {
        return estimators::SumUpdate::Delete(id);
      }
    }
    last_insert_ = next_id_;
    return estimators::SumUpdate::Insert(next_id_++, vmax_);
  }

 private:
  double vmax_;
  AdversaryModel model_;
  std::uint64_t next_id_;
  std::optional<std::uint64_t> last_insert_;
};

// Finds a landmark with pair queries, then deletes all its edges so the
// target must recommit, then restores them. An adjacent pair is answered
// exactly only when one of its endpoints is a landmark; a second query
// sharing one endpoint tells the two apart.
class LandmarkAttack final : public Adversary {
 public:
  LandmarkAttack(AdversaryModel model, Rng rng) : model_(model), rng_(std::move(rng)) {}

  std::string name() const override { return "attack-landmark"; }
  AdversaryModel model() const override { return model_; }
  std::uint64_t isolations() const { return isolations_; }

  std::optional<Update> Next(const TranscriptView& view, const Instance& current) override {
    const Graph& g = current.graph;
    switch (mode_) {
      case Mode::kSearch: {
        if (asked_ && Exact(view, g)) {
          mode_ = Mode::kConfirm;
          return Confirm(g);
        }
        return Search(g);
      }
      case Mode::kConfirm: {
        target_ = Exact(view, g) ? tested_ : other_;
        asked_ = false;
        return BeginIsolate(g);
      }
      case Mode::kIsolate: {
        if (!g.neighbors(target_).empty()) {
          const auto& nb = g.neighbors(target_).front();
          removed_.push_back({target_, nb.to, nb.w});
          return GraphUpdate::Delete(target_, nb.to);
        }
        ++isolations_;
        mode_ = Mode::kRestore;
        [[fallthrough]];
      }
      case Mode::kRestore: {
        if (!removed_.empty()) {
          const auto e = removed_.back();
          removed_.pop_back();
          return GraphUpdate::Insert(e.u, e.v, e.w);
        }
        mode_ = Mode::kSearch;
        matching_.clear();
        return Search(g);
      }
    }
    return std::nullopt;
  }

 private:
  enum class Mode { kSearch, kConfirm, kIsolate, kRestore };

  // Whether the last pair query was answered with the true distance.
  bool Exact(const TranscriptView& view, const Graph& g) const {
    const std::size_t t = view.steps();
    if (t == 0 || !view.visible(t - 1)) return false;
    const double d = graph::DistanceExact(g, pair_.first, pair_.second);
    return !internal_attack::Changed(view.output(t - 1), d);
  }

  std::optional<Update> Search(const Graph& g) {
    if (matching_.empty()) BuildMatching(g);
    if (matching_.empty()) return std::nullopt;
    pair_ = matching_.back();
    matching_.pop_back();
    asked_ = true;
    return estimators::PairUpdate{pair_.first, pair_.second};
  }

  // Tests one endpoint of the exact pair with another of its neighbors.
  std::optional<Update> Confirm(const Graph& g) {
    const auto [u, v] = pair_;
    for (const auto& [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
      for (const auto& nb : g.neighbors(a)) {
        if (nb.to != b) {
          tested_ = a;
          other_ = b;
          pair_ = {a, nb.to};
          return estimators::PairUpdate{a, nb.to};
        }
      }
    }
    tested_ = other_ = u;
    return estimators::PairUpdate{u, v};
  }

  std::optional<Update> BeginIsolate(const Graph& g) {
    mode_ = Mode::kIsolate;
    removed_.clear();
    if (g.neighbors(target_).empty()) {
      mode_ = Mode::kSearch;
      return Search(g);
    }
    const auto& nb = g.neighbors(target_).front();
    removed_.push_back({target_, nb.to, nb.w});
    return GraphUpdate::Delete(target_, nb.to);
  }

  // A greedy matching over a random vertex order, so the pair queries cover
  // most vertices.
  void BuildMatching(const Graph& g) {
    std::vector<Vertex> order(g.num_vertices());
    for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng_);
    std::vector<bool> used(g.num_vertices(), false);
    for (Vertex u : order) {
      if (used[u]) continue;
      for (const auto& nb : g.neighbors(u)) {
        if (!used[nb.to]) {
          used[u] = used[nb.to] = true;
          matching_.emplace_back(u, nb.to);
          break;
        }
      }
    }
  }

  AdversaryModel model_;
  Rng rng_;
  Mode mode_ = Mode::kSearch;
  bool asked_ = false;
  std::pair<Vertex, Vertex> pair_{};
  Vertex tested_ = 0;
  Vertex other_ = 0;
  Vertex target_ = 0;
  std::vector<std::pair<Vertex, Vertex>> matching_;
  std::vector<graph::Edge> removed_;
  std::uint64_t isolations_ = 0;
};

}  // namespace robustdyn::harness
