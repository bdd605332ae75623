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
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "robustdyn/common/errors.hpp"

namespace robustdyn::graph {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex to = 0;
  double w = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Undirected simple graph with positive weights. Each adjacency list is kept
// sorted by neighbor id, so edge lookup is a binary search and iteration order
// is deterministic.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n), degree_(n, 0.0) {}

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return m_; }

  const std::vector<Neighbor>& neighbors(Vertex u) const {
    CheckVertex(u);
    return adj_[u];
  }
  // Weighted degree.
  double degree(Vertex u) const {
    CheckVertex(u);
    return degree_[u];
  }
  std::size_t edge_count(Vertex u) const {
    CheckVertex(u);
    return adj_[u].size();
  }

  bool HasEdge(Vertex u, Vertex v) const { return Find(u, v) != nullptr; }
  // Zero when absent.
  double Weight(Vertex u, Vertex v) const {
    const Neighbor* e = Find(u, v);
    return e ? e->w : 0.0;
  }

  void AddEdge(Vertex u, Vertex v, double w) {
    CheckVertex(u);
    CheckVertex(v);
    if (u == v) throw InvalidUpdate("self-loop " + std::to_string(u));
    if (!(w > 0.0)) throw InvalidUpdate("edge weight must be positive");
    if (HasEdge(u, v)) throw InvalidUpdate("duplicate edge " + Name(u, v));
    Insert(adj_[u], {v, w});
    Insert(adj_[v], {u, w});
    degree_[u] += w;
    degree_[v] += w;
    ++m_;
  }

  // Returns the removed weight.
  double RemoveEdge(Vertex u, Vertex v) {
    CheckVertex(u);
    CheckVertex(v);
    const double w = Weight(u, v);
    if (w == 0.0) throw InvalidUpdate("missing edge " + Name(u, v));
    Erase(adj_[u], v);
    Erase(adj_[v], u);
    degree_[u] -= w;
    degree_[v] -= w;
    if (adj_[u].empty()) degree_[u] = 0.0;
    if (adj_[v].empty()) degree_[v] = 0.0;
    --m_;
    return w;
  }

  void SetWeight(Vertex u, Vertex v, double w) {
    RemoveEdge(u, v);
    AddEdge(u, v, w);
  }

  // Every edge once with u < v, in lexicographic order.
  std::vector<Edge> Edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (const auto& nb : adj_[u]) {
        if (u < nb.to) out.push_back({u, nb.to, nb.w});
      }
    }
    return out;
  }

  double TotalWeight() const {
    double total = 0.0;
    for (const auto& e : Edges()) total += e.w;
    return total;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.m_ == b.m_ && a.adj_ == b.adj_;
  }

 private:
  void CheckVertex(Vertex u) const {
    if (u >= adj_.size()) {
      throw InvalidArgument("vertex " + std::to_string(u) + " out of range");
    }
  }

  const Neighbor* Find(Vertex u, Vertex v) const {
    CheckVertex(u);
    CheckVertex(v);
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Neighbor& a, Vertex x) { return a.to < x; });
    return (it != list.end() && it->to == v) ? &*it : nullptr;
  }

  static void Insert(std::vector<Neighbor>& list, Neighbor nb) {
    auto it = std::lower_bound(list.begin(), list.end(), nb.to,
                               [](const Neighbor& a, Vertex x) { return a.to < x; });
    list.insert(it, nb);
  }

  static void Erase(std::vector<Neighbor>& list, Vertex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Neighbor& a, Vertex x) { return a.to < x; });
    list.erase(it);
  }

  static std::string Name(Vertex u, Vertex v) {
    return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
  }

  std::vector<std::vector<Neighbor>> adj_;
  std::vector<double> degree_;
  std::size_t m_ = 0;
};

struct GraphUpdate {
  enum class Kind { kInsert, kDelete };

  Kind kind = Kind::kInsert;
  Vertex u = 0;
  Vertex v = 0;
  double w = 0.0;  // Ignored for deletions.

  static GraphUpdate Insert(Vertex u, Vertex v, double w = 1.0) {
    return {Kind::kInsert, u, v, w};
  }
  static GraphUpdate Delete(Vertex u, Vertex v) { return {Kind::kDelete, u, v, 0.0}; }

  bool is_insert() const { return kind == Kind::kInsert; }

  friend bool operator==(const GraphUpdate&, const GraphUpdate&) = default;
};

// Throws InvalidUpdate on a duplicate insert or a missing delete; the graph is
// unchanged in that case.
inline void ApplyUpdate(Graph& g, const GraphUpdate& up) {
  if (up.is_insert()) {
    g.AddEdge(up.u, up.v, up.w);
  } else {
    g.RemoveEdge(up.u, up.v);
  }
}

inline bool IsLegal(const Graph& g, const GraphUpdate& up) {
  if (up.u >= g.num_vertices() || up.v >= g.num_vertices() || up.u == up.v) {
    return false;
  }
  return up.is_insert() ? (up.w > 0.0 && !g.HasEdge(up.u, up.v)) : g.HasEdge(up.u, up.v);
}

// A graph together with the log of updates applied to it.
class DynamicGraph {
 public:
  DynamicGraph() = default;
  explicit DynamicGraph(Graph g) : g_(std::move(g)) {}

  const Graph& graph() const { return g_; }
  const std::vector<GraphUpdate>& log() const { return log_; }

  void Apply(const GraphUpdate& up) {
    ApplyUpdate(g_, up);
    log_.push_back(up);
  }

 private:
  Graph g_;
  std::vector<GraphUpdate> log_;
};

// One side S of a cut (S, V \ S).
struct Cut {
  std::vector<bool> side;

  static Cut FromVertices(std::size_t n, const std::vector<Vertex>& s) {
    Cut c{std::vector<bool>(n, false)};
    for (Vertex v : s) {
      if (v >= n) throw InvalidArgument("cut vertex out of range");
      c.side[v] = true;
    }
    return c;
  }

  std::size_t size() const {
    return static_cast<std::size_t>(std::count(side.begin(), side.end(), true));
  }
  bool proper() const {
    const std::size_t k = size();
    return k > 0 && k < side.size();
  }
};

}  // namespace robustdyn::graph
