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
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/graph/graph.hpp"
#include "robustdyn/sparsify/decomposition.hpp"
#include "robustdyn/sparsify/sampling.hpp"

namespace robustdyn::sparsify {

// Samples every vertex's owned edges of `piece` at that vertex's rate and
// calls emit(u, v, w / p) for each kept edge. Returns the work spent, which
// is proportional to the number of piece vertices plus kept edges.
template <typename Emit>
std::uint64_t SamplePiece(const Piece& piece, const SamplingConfig& cfg, std::size_t n,
                          Rng& rng, Emit&& emit) {
  std::uint64_t work = 0;
  for (const auto& [u, pv] : piece.vertices()) {
    const double p = SamplingProb(cfg, n, pv.deg_tilde);
    const auto picked = SubsetSample(pv.owned.size(), p, rng, &work);
    for (auto idx : picked) {
      const Vertex v = pv.owned[idx];
      emit(u, v, piece.Weight(u, v) / p);
    }
    work += picked.size();
  }
  return work;
}

// H = union over pieces of sampled piece sparsifiers, kept in sync with the
// decomposition until cnt has grown by more than the budget t.
class SparsifierHandle {
 public:
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

  SparsifierHandle(const ExpanderDecomposition& d, std::uint64_t budget, SamplingConfig cfg,
                   Rng rng)
      : d_(&d),
        cfg_(cfg),
        budget_(budget),
        cnt_at_issue_(d.cnt()),
        rng_(std::move(rng)),
        h_(d.graph().num_vertices()) {
    for (const auto& kv : d.pieces()) issue_work_ += SampleWholePiece(kv.second, nullptr);
  }

  const Graph& graph() const { return h_; }
  const ExpanderDecomposition& decomposition() const { return *d_; }
  const SamplingConfig& sampling() const { return cfg_; }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t cnt_at_issue() const { return cnt_at_issue_; }
  std::uint64_t issue_work() const { return issue_work_; }
  std::uint64_t maintain_work() const { return maintain_work_; }

  bool exhausted() const { return d_->cnt() - cnt_at_issue_ > budget_; }

  // Re-issue on the current decomposition with fresh randomness.
  SparsifierHandle Refresh(Rng rng) const { return SparsifierHandle(*d_, budget_, cfg_, std::move(rng)); }

  // Applies the piece-level changes of one decomposition update to H and
  // returns the resulting changes of H. Throws BudgetExhausted once the
  // decomposition's cnt has moved more than t past issue.
  std::vector<GraphUpdate> Maintain(const DecompUpdateResult& r) {
    if (exhausted()) throw BudgetExhausted("sparsifier budget exhausted");
    std::vector<GraphUpdate> delta;
    for (const auto& c : r.changes) {
      switch (c.kind) {
        case PieceChange::Kind::kEdgeDeleted:
          Unsample(c.edge.u, c.edge.v, &delta);
          break;
        case PieceChange::Kind::kVertexDeleted:
          break;
        case PieceChange::Kind::kPieceRemoved:
          DropPiece(c.piece, &delta);
          break;
        case PieceChange::Kind::kPieceAdded:
          if (const Piece* p = d_->FindPiece(c.piece)) {
            maintain_work_ += SampleWholePiece(*p, &delta);
          }
          break;
      }
      ++maintain_work_;
    }
    // Owner moves first drop stale samples; vertices whose deg~ changed then
    // resample their owned lists; remaining moved edges are redrawn at their
    // new owner's rate.
    for (const auto& mv : r.owner_moves) Unsample(mv.u, mv.v, &delta);
    std::map<std::pair<PieceId, Vertex>, bool> resampled;
    for (const auto& dc : r.degree_changes) {
      const Piece* p = d_->FindPiece(dc.piece);
      if (!p || !p->Contains(dc.vertex)) continue;
      if (!resampled.emplace(std::pair{dc.piece, dc.vertex}, true).second) continue;
      ResampleOwner(*p, dc.vertex, &delta);
    }
    for (const auto& mv : r.owner_moves) {
      const Piece* p = d_->FindPiece(mv.piece);
      if (!p || !p->HasEdge(mv.u, mv.v)) continue;
      const Vertex owner = p->Owner(mv.u, mv.v);
      if (resampled.count({mv.piece, owner})) continue;
      const double prob = SamplingProb(cfg_, n(), p->vertex(owner).deg_tilde);
      ++maintain_work_;
      if (Bernoulli(rng_, prob)) {
        AddSample(mv.piece, owner, owner == mv.u ? mv.v : mv.u, p->Weight(mv.u, mv.v) / prob,
                  &delta);
      }
    }
    return delta;
  }

 private:
  struct Sampled {
    PieceId piece = 0;
    Vertex owner = 0;
  };

  std::size_t n() const { return d_->graph().num_vertices(); }

  std::uint64_t SampleWholePiece(const Piece& p, std::vector<GraphUpdate>* delta) {
    return SamplePiece(p, cfg_, n(), rng_, [&](Vertex u, Vertex v, double w) {
      AddSample(p.id(), u, v, w, delta);
    });
  }

  void AddSample(PieceId piece, Vertex owner, Vertex other, double w,
                 std::vector<GraphUpdate>* delta) {
    h_.AddEdge(owner, other, w);
    sampled_[EdgeKey(owner, other)] = {piece, owner};
    auto& list = by_owner_[{piece, owner}];
    list.insert(std::lower_bound(list.begin(), list.end(), other), other);
    if (delta) delta->push_back(GraphUpdate::Insert(owner, other, w));
  }

  void Unsample(Vertex u, Vertex v, std::vector<GraphUpdate>* delta) {
    auto it = sampled_.find(EdgeKey(u, v));
    if (it == sampled_.end()) return;
    const auto [piece, owner] = it->second;
    const Vertex other = owner == u ? v : u;
    auto list_it = by_owner_.find({piece, owner});
    auto& list = list_it->second;
    list.erase(std::lower_bound(list.begin(), list.end(), other));
    if (list.empty()) by_owner_.erase(list_it);
    sampled_.erase(it);
    h_.RemoveEdge(u, v);
    ++maintain_work_;
    if (delta) delta->push_back(GraphUpdate::Delete(u, v));
  }

  void DropPiece(PieceId piece, std::vector<GraphUpdate>* delta) {
    auto it = by_owner_.lower_bound({piece, 0});
    while (it != by_owner_.end() && it->first.first == piece) {
      const Vertex owner = it->first.second;
      for (Vertex other : it->second) {
        sampled_.erase(EdgeKey(owner, other));
        h_.RemoveEdge(owner, other);
        ++maintain_work_;
        if (delta) delta->push_back(GraphUpdate::Delete(owner, other));
      }
      it = by_owner_.erase(it);
    }
  }

  void ResampleOwner(const Piece& p, Vertex u, std::vector<GraphUpdate>* delta) {
    if (auto it = by_owner_.find({p.id(), u}); it != by_owner_.end()) {
      const auto others = it->second;
      for (Vertex other : others) Unsample(u, other, delta);
    }
    const auto& pv = p.vertex(u);
    const double prob = SamplingProb(cfg_, n(), pv.deg_tilde);
    const auto picked = SubsetSample(pv.owned.size(), prob, rng_, &maintain_work_);
    for (auto idx : picked) {
      const Vertex v = pv.owned[idx];
      AddSample(p.id(), u, v, p.Weight(u, v) / prob, delta);
    }
    maintain_work_ += picked.size();
  }

  const ExpanderDecomposition* d_;
  SamplingConfig cfg_;
  std::uint64_t budget_;
  std::uint64_t cnt_at_issue_;
  Rng rng_;
  Graph h_;
  std::unordered_map<std::uint64_t, Sampled> sampled_;
  std::map<std::pair<PieceId, Vertex>, std::vector<Vertex>> by_owner_;
  std::uint64_t issue_work_ = 0;
  std::uint64_t maintain_work_ = 0;
};

// Sparsify(t): a fresh handle valid for the next t edge changes.
inline SparsifierHandle Sparsify(const ExpanderDecomposition& d, std::uint64_t t,
                                 const SamplingConfig& cfg, Rng rng) {
  internal::Require(t >= 1, "sparsify budget must be positive");
  return SparsifierHandle(d, t, cfg, std::move(rng));
}

}  // namespace robustdyn::sparsify
