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

// Decomposition of a dynamic graph into edge-disjoint conductance-phi pieces.
//
// Maintenance is a rebuild policy rather than a fully dynamic algorithm:
// insertions become buffered single-edge pieces, deletions are applied in
// place and the piece is recertified, and a piece (or the whole
// decomposition) is rebuilt when its certificate fails or too many changes
// have accumulated. The externally visible interface is the list of
// piece-level changes and the counter cnt of edge changes across pieces.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/graph/graph.hpp"
#include "robustdyn/graph/oracles.hpp"
#include "robustdyn/graph/spectral.hpp"
#include "robustdyn/sparsify/sampling.hpp"

namespace robustdyn::sparsify {

using graph::Edge;
using graph::Graph;
using graph::GraphUpdate;
using graph::Neighbor;
using graph::Vertex;
using PieceId = std::uint64_t;

inline std::uint64_t EdgeKey(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// u owns {u,v} iff deg~(u) < deg~(v), ties going to the smaller id.
inline Vertex OwnerOf(Vertex u, std::uint64_t dt_u, Vertex v, std::uint64_t dt_v) {
  if (dt_u != dt_v) return dt_u < dt_v ? u : v;
  return u < v ? u : v;
}

enum class CertificateKind {
  kTrivial,    // single edge, conductance 1
  kExact,      // enumerated over all cuts
  kSpectral,   // Cheeger lower bound lambda2/2 >= phi
  kHeuristic,  // best sweep cut >= phi, no proof
};

inline const char* CertificateName(CertificateKind k) {
  switch (k) {
    case CertificateKind::kTrivial: return "trivial";
    case CertificateKind::kExact: return "exact";
    case CertificateKind::kSpectral: return "spectral";
    case CertificateKind::kHeuristic: return "heuristic";
  }
  return "?";
}

struct Certificate {
  CertificateKind kind = CertificateKind::kTrivial;
  // Exact conductance, proven lower bound, or sweep estimate, by kind.
  double conductance = 1.0;
};

struct PieceVertex {
  std::vector<Neighbor> adj;   // sorted by neighbor id
  std::uint64_t deg_tilde = 0;
  std::vector<Vertex> owned;   // sorted neighbor ids of owned edges
};

class Piece {
 public:
  PieceId id() const { return id_; }
  const std::map<Vertex, PieceVertex>& vertices() const { return vertices_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return m_; }
  const Certificate& certificate() const { return cert_; }
  bool buffered() const { return buffered_; }

  const PieceVertex& vertex(Vertex u) const {
    auto it = vertices_.find(u);
    if (it == vertices_.end()) throw InvalidArgument("vertex not in piece");
    return it->second;
  }
  bool Contains(Vertex u) const { return vertices_.count(u) > 0; }

  double Weight(Vertex u, Vertex v) const {
    auto it = vertices_.find(u);
    if (it == vertices_.end()) return 0.0;
    const auto& adj = it->second.adj;
    auto pos = std::lower_bound(adj.begin(), adj.end(), v,
                                [](const Neighbor& a, Vertex x) { return a.to < x; });
    return (pos != adj.end() && pos->to == v) ? pos->w : 0.0;
  }
  bool HasEdge(Vertex u, Vertex v) const { return Weight(u, v) > 0.0; }

  Vertex Owner(Vertex u, Vertex v) const {
    return OwnerOf(u, vertex(u).deg_tilde, v, vertex(v).deg_tilde);
  }

  std::vector<Edge> Edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (const auto& [u, pv] : vertices_) {
      for (const auto& nb : pv.adj) {
        if (u < nb.to) out.push_back({u, nb.to, nb.w});
      }
    }
    return out;
  }

  // Relabelled copy on vertices 0..k-1; `ids` maps local to global.
  Graph LocalGraph(std::vector<Vertex>* ids) const {
    std::vector<Vertex> order;
    order.reserve(vertices_.size());
    for (const auto& kv : vertices_) order.push_back(kv.first);
    Graph g(order.size());
    auto local = [&](Vertex x) {
      return static_cast<Vertex>(std::lower_bound(order.begin(), order.end(), x) - order.begin());
    };
    for (const auto& e : Edges()) g.AddEdge(local(e.u), local(e.v), e.w);
    if (ids) *ids = std::move(order);
    return g;
  }

 private:
  friend class ExpanderDecomposition;

  PieceId id_ = 0;
  std::map<Vertex, PieceVertex> vertices_;
  std::size_t m_ = 0;
  Certificate cert_;
  bool buffered_ = false;
  std::size_t edges_at_cert_ = 0;
  std::size_t deletions_since_cert_ = 0;
};

struct PieceChange {
  enum class Kind { kEdgeDeleted, kVertexDeleted, kPieceRemoved, kPieceAdded };

  Kind kind = Kind::kEdgeDeleted;
  PieceId piece = 0;
  Edge edge{};             // kEdgeDeleted
  Vertex vertex = 0;       // kVertexDeleted
  std::uint64_t edge_changes = 0;
};

inline const char* ChangeName(PieceChange::Kind k) {
  switch (k) {
    case PieceChange::Kind::kEdgeDeleted: return "edge_deleted";
    case PieceChange::Kind::kVertexDeleted: return "vertex_deleted";
    case PieceChange::Kind::kPieceRemoved: return "piece_removed";
    case PieceChange::Kind::kPieceAdded: return "piece_added";
  }
  return "?";
}

// Ownership-index notifications; not piece changes and not counted in cnt.
struct DegreeChange {
  PieceId piece = 0;
  Vertex vertex = 0;
  std::uint64_t old_deg_tilde = 0;
  std::uint64_t new_deg_tilde = 0;
};

struct OwnerMove {
  PieceId piece = 0;
  Vertex u = 0;
  Vertex v = 0;
  Vertex new_owner = 0;
};

struct DecompUpdateResult {
  std::vector<PieceChange> changes;
  std::vector<DegreeChange> degree_changes;
  std::vector<OwnerMove> owner_moves;
  bool rebuilt = false;

  std::uint64_t edge_changes() const {
    std::uint64_t total = 0;
    for (const auto& c : changes) total += c.edge_changes;
    return total;
  }
};

struct DecompositionConfig {
  double phi = 0.1;
  // Pieces up to this many vertices are certified by enumeration.
  std::size_t exact_limit = 16;
  // Full rebuild once live buffered insert pieces exceed
  // max(min_rebuild_buffer, rebuild_buffer_fraction * m at last build).
  double rebuild_buffer_fraction = 0.25;
  std::size_t min_rebuild_buffer = 16;
  // A piece is rebuilt once deletions since certification exceed this
  // fraction of its edge count at certification.
  double piece_rebuild_fraction = 0.5;
  std::size_t max_depth = 64;
};

class ExpanderDecomposition {
 public:
  static ExpanderDecomposition Decompose(const Graph& g, DecompositionConfig cfg = {}) {
    internal::Require(cfg.phi > 0.0 && cfg.phi <= 1.0, "phi must lie in (0,1]");
    internal::Require(cfg.exact_limit <= graph::kMaxExactConductanceVertices,
                      "exact certification limit too large");
    ExpanderDecomposition d;
    d.cfg_ = cfg;
    d.g_ = Graph(g.num_vertices());
    for (const auto& e : g.Edges()) d.g_.AddEdge(e.u, e.v, e.w);
    DecompUpdateResult scratch;
    d.BuildAll(scratch, d.preprocess_work_);
    // The initial build is not a change relative to anything.
    d.cnt_ = 0;
    d.log_.clear();
    return d;
  }

  const Graph& graph() const { return g_; }
  const DecompositionConfig& config() const { return cfg_; }
  std::uint64_t cnt() const { return cnt_; }
  const std::map<PieceId, Piece>& pieces() const { return pieces_; }
  const std::vector<PieceChange>& change_log() const { return log_; }
  std::uint64_t preprocess_work() const { return preprocess_work_; }
  std::uint64_t update_work() const { return update_work_; }
  std::uint64_t rebuilds() const { return rebuilds_; }

  const Piece* FindPiece(PieceId id) const {
    auto it = pieces_.find(id);
    return it == pieces_.end() ? nullptr : &it->second;
  }

  PieceId PieceOf(Vertex u, Vertex v) const {
    auto it = edge_piece_.find(EdgeKey(u, v));
    if (it == edge_piece_.end()) throw InvalidArgument("edge not in decomposition");
    return it->second;
  }

  // Sum over pieces of their vertex counts.
  std::size_t vertex_occurrences() const {
    std::size_t total = 0;
    for (const auto& kv : pieces_) total += kv.second.num_vertices();
    return total;
  }

  DecompUpdateResult Apply(const GraphUpdate& up) {
    if (!graph::IsLegal(g_, up)) throw InvalidUpdate("illegal update for decomposition");
    DecompUpdateResult result;
    std::uint64_t& work = update_work_;
    if (up.is_insert()) {
      g_.AddEdge(up.u, up.v, up.w);
      AddPiece({{std::min(up.u, up.v), std::max(up.u, up.v), up.w}},
               {CertificateKind::kTrivial, 1.0}, /*buffered=*/true, result, work);
      ++buffered_;
      const auto limit = std::max<double>(static_cast<double>(cfg_.min_rebuild_buffer),
                                          cfg_.rebuild_buffer_fraction * m_at_build_);
      if (static_cast<double>(buffered_) > limit) RebuildAll(result, work);
    } else {
      g_.RemoveEdge(up.u, up.v);
      const PieceId id = PieceOf(up.u, up.v);
      DeleteFromPiece(id, up.u, up.v, result, work);
    }
    return result;
  }

  // Debug dump: one header line per piece followed by its edges.
  void Dump(std::ostream& out) const {
    out << "decomposition n=" << g_.num_vertices() << " m=" << g_.num_edges()
        << " pieces=" << pieces_.size() << " cnt=" << cnt_ << '\n';
    for (const auto& [id, p] : pieces_) {
      out << "piece " << id << " cert=" << CertificateName(p.cert_.kind)
          << " phi=" << p.cert_.conductance << " vertices=" << p.num_vertices()
          << " edges=" << p.num_edges() << '\n';
      for (const auto& e : p.Edges()) out << "  " << e.u << ' ' << e.v << ' ' << e.w << '\n';
    }
  }

  // One line per piece-level change.
  void DumpChangeLog(std::ostream& out) const {
    for (const auto& c : log_) {
      out << ChangeName(c.kind) << " piece=" << c.piece;
      if (c.kind == PieceChange::Kind::kEdgeDeleted) out << " edge=" << c.edge.u << ',' << c.edge.v;
      if (c.kind == PieceChange::Kind::kVertexDeleted) out << " vertex=" << c.vertex;
      out << " edge_changes=" << c.edge_changes << '\n';
    }
  }

 private:
  struct CertifyResult {
    bool ok = false;
    Certificate cert;
    graph::Cut cut;  // local ids; meaningful when !ok
  };

  CertifyResult Certify(const Graph& local, std::uint64_t& work) const {
    CertifyResult r;
    const std::size_t n = local.num_vertices();
    if (local.num_edges() == 1) {
      r.ok = true;
      r.cert = {CertificateKind::kTrivial, 1.0};
      return r;
    }
    std::uint32_t comps = 0;
    const auto label = graph::ConnectedComponents(local, &comps);
    work += n + local.num_edges();
    if (comps > 1) {
      r.cut.side.assign(n, false);
      for (Vertex v = 0; v < n; ++v) r.cut.side[v] = label[v] == 0;
      return r;
    }
    if (n <= cfg_.exact_limit) {
      const auto exact = graph::ConductanceMin(local);
      work += (std::uint64_t{1} << (n - 1)) * 2;
      r.ok = exact.value >= cfg_.phi;
      r.cert = {CertificateKind::kExact, exact.value};
      r.cut = exact.cut;
      return r;
    }
    const auto sweep = graph::ComputeSpectralSweep(local);
    work += sweep.work;
    if (sweep.conductance_lower_bound() >= cfg_.phi) {
      r.ok = true;
      r.cert = {CertificateKind::kSpectral, sweep.conductance_lower_bound()};
    } else if (sweep.sweep.value >= cfg_.phi) {
      r.ok = true;
      r.cert = {CertificateKind::kHeuristic, sweep.sweep.value};
    } else {
      r.cut = sweep.sweep.cut;
    }
    return r;
  }

  // Recursively splits `edges` along low-conductance cuts.
  void Partition(const std::vector<Edge>& edges, std::size_t depth,
                 std::vector<std::pair<std::vector<Edge>, Certificate>>& out,
                 std::uint64_t& work) const {
    if (edges.empty()) return;
    if (edges.size() == 1) {
      out.push_back({edges, {CertificateKind::kTrivial, 1.0}});
      ++work;
      return;
    }
    std::vector<Vertex> ids;
    ids.reserve(2 * edges.size());
    for (const auto& e : edges) {
      ids.push_back(e.u);
      ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto local = [&](Vertex x) {
      return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
    };
    Graph lg(ids.size());
    for (const auto& e : edges) lg.AddEdge(local(e.u), local(e.v), e.w);
    work += edges.size();
    const auto cert = Certify(lg, work);
    if (cert.ok) {
      out.push_back({edges, cert.cert});
      return;
    }
    if (depth >= cfg_.max_depth) {
      for (const auto& e : edges) out.push_back({{e}, {CertificateKind::kTrivial, 1.0}});
      return;
    }
    std::vector<Edge> inside, outside, cross;
    for (const auto& e : edges) {
      const bool a = cert.cut.side[local(e.u)];
      const bool b = cert.cut.side[local(e.v)];
      (a && b ? inside : (!a && !b ? outside : cross)).push_back(e);
    }
    Partition(inside, depth + 1, out, work);
    Partition(outside, depth + 1, out, work);
    Partition(cross, depth + 1, out, work);
  }

  PieceId AddPiece(const std::vector<Edge>& edges, Certificate cert, bool buffered,
                   DecompUpdateResult& result, std::uint64_t& work) {
    const PieceId id = next_id_++;
    Piece& p = pieces_[id];
    p.id_ = id;
    p.cert_ = cert;
    p.buffered_ = buffered;
    p.m_ = edges.size();
    p.edges_at_cert_ = edges.size();
    for (const auto& e : edges) {
      p.vertices_[e.u].adj.push_back({e.v, e.w});
      p.vertices_[e.v].adj.push_back({e.u, e.w});
      edge_piece_[EdgeKey(e.u, e.v)] = id;
    }
    for (auto& [u, pv] : p.vertices_) {
      std::sort(pv.adj.begin(), pv.adj.end(),
                [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
      pv.deg_tilde = ApproxDegree(pv.adj.size());
    }
    for (auto& [u, pv] : p.vertices_) {
      for (const auto& nb : pv.adj) {
        if (p.Owner(u, nb.to) == u) pv.owned.push_back(nb.to);
      }
      work += pv.adj.size() + 1;
    }
    Record({PieceChange::Kind::kPieceAdded, id, {}, 0, edges.size()}, result);
    return id;
  }

  void RemovePiece(PieceId id, DecompUpdateResult& result, std::uint64_t& work) {
    auto it = pieces_.find(id);
    const Piece& p = it->second;
    for (const auto& e : p.Edges()) edge_piece_.erase(EdgeKey(e.u, e.v));
    work += p.num_edges() + 1;
    if (p.buffered_) --buffered_;
    Record({PieceChange::Kind::kPieceRemoved, id, {}, 0, p.num_edges()}, result);
    pieces_.erase(it);
  }

  void BuildAll(DecompUpdateResult& result, std::uint64_t& work) {
    // Weight classes [2^k, 2^{k+1}) are decomposed separately.
    std::map<int, std::vector<Edge>> buckets;
    for (const auto& e : g_.Edges()) {
      buckets[static_cast<int>(std::floor(std::log2(e.w)))].push_back(e);
      ++work;
    }
    for (const auto& [bucket, edges] : buckets) {
      std::vector<std::pair<std::vector<Edge>, Certificate>> out;
      Partition(edges, 0, out, work);
      for (const auto& [piece_edges, cert] : out) {
        AddPiece(piece_edges, cert, /*buffered=*/false, result, work);
      }
    }
    buffered_ = 0;
    m_at_build_ = static_cast<double>(g_.num_edges());
  }

  void RebuildAll(DecompUpdateResult& result, std::uint64_t& work) {
    std::vector<PieceId> ids;
    for (const auto& kv : pieces_) ids.push_back(kv.first);
    for (PieceId id : ids) RemovePiece(id, result, work);
    BuildAll(result, work);
    result.rebuilt = true;
    ++rebuilds_;
  }

  void RebuildPiece(PieceId id, DecompUpdateResult& result, std::uint64_t& work) {
    const auto edges = pieces_.at(id).Edges();
    RemovePiece(id, result, work);
    std::vector<std::pair<std::vector<Edge>, Certificate>> out;
    Partition(edges, 0, out, work);
    for (const auto& [piece_edges, cert] : out) {
      AddPiece(piece_edges, cert, /*buffered=*/false, result, work);
    }
  }

  void SetDegree(Piece& p, Vertex x, DecompUpdateResult& result, std::uint64_t& work) {
    PieceVertex& px = p.vertices_.at(x);
    const std::uint64_t old_dt = px.deg_tilde;
    const std::uint64_t new_dt = ApproxDegree(px.adj.size());
    if (old_dt == new_dt) return;
    px.deg_tilde = new_dt;
    result.degree_changes.push_back({p.id_, x, old_dt, new_dt});
    for (const auto& nb : px.adj) {
      PieceVertex& py = p.vertices_.at(nb.to);
      const Vertex before = OwnerOf(x, old_dt, nb.to, py.deg_tilde);
      const Vertex after = OwnerOf(x, new_dt, nb.to, py.deg_tilde);
      ++work;
      if (before == after) continue;
      auto& from = (before == x) ? px.owned : py.owned;
      auto& to = (after == x) ? px.owned : py.owned;
      const Vertex other_from = (before == x) ? nb.to : x;
      const Vertex other_to = (after == x) ? nb.to : x;
      from.erase(std::lower_bound(from.begin(), from.end(), other_from));
      to.insert(std::lower_bound(to.begin(), to.end(), other_to), other_to);
      result.owner_moves.push_back({p.id_, std::min(x, nb.to), std::max(x, nb.to), after});
    }
  }

  void DeleteFromPiece(PieceId id, Vertex u, Vertex v, DecompUpdateResult& result,
                       std::uint64_t& work) {
    Piece& p = pieces_.at(id);
    const double w = p.Weight(u, v);
    const Vertex owner = p.Owner(u, v);
    const Vertex other = owner == u ? v : u;
    auto& owned = p.vertices_.at(owner).owned;
    owned.erase(std::lower_bound(owned.begin(), owned.end(), other));
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
      auto& adj = p.vertices_.at(a).adj;
      adj.erase(std::lower_bound(adj.begin(), adj.end(), b,
                                 [](const Neighbor& x, Vertex y) { return x.to < y; }));
    }
    --p.m_;
    ++p.deletions_since_cert_;
    edge_piece_.erase(EdgeKey(u, v));
    work += 4;
    Record({PieceChange::Kind::kEdgeDeleted, id, {std::min(u, v), std::max(u, v), w}, 0, 1},
           result);
    for (Vertex x : {u, v}) {
      if (p.vertices_.at(x).adj.empty()) {
        p.vertices_.erase(x);
        Record({PieceChange::Kind::kVertexDeleted, id, {}, x, 0}, result);
      } else {
        SetDegree(p, x, result, work);
      }
    }
    if (p.m_ == 0) {
      RemovePiece(id, result, work);
      return;
    }
    if (p.m_ == 1) {
      p.cert_ = {CertificateKind::kTrivial, 1.0};
      return;
    }
    if (static_cast<double>(p.deletions_since_cert_) >
        cfg_.piece_rebuild_fraction * static_cast<double>(p.edges_at_cert_)) {
      RebuildPiece(id, result, work);
      return;
    }
    const auto cert = Certify(p.LocalGraph(nullptr), work);
    if (cert.ok) {
      p.cert_ = cert.cert;
    } else {
      RebuildPiece(id, result, work);
    }
  }

  void Record(const PieceChange& c, DecompUpdateResult& result) {
    cnt_ += c.edge_changes;
    log_.push_back(c);
    result.changes.push_back(c);
  }

  DecompositionConfig cfg_;
  Graph g_;
  std::map<PieceId, Piece> pieces_;
  std::unordered_map<std::uint64_t, PieceId> edge_piece_;
  std::vector<PieceChange> log_;
  PieceId next_id_ = 0;
  std::uint64_t cnt_ = 0;
  std::size_t buffered_ = 0;
  double m_at_build_ = 0.0;
  std::uint64_t preprocess_work_ = 0;
  std::uint64_t update_work_ = 0;
  std::uint64_t rebuilds_ = 0;
};

}  // namespace robustdyn::sparsify
