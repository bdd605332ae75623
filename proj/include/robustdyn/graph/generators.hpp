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
#include <utility>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/graph/graph.hpp"

namespace robustdyn::graph {

inline Graph PathGraph(std::size_t n, double w = 1.0) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.AddEdge(v, v + 1, w);
  return g;
}

inline Graph CycleGraph(std::size_t n, double w = 1.0) {
  internal::Require(n >= 3, "cycle needs at least 3 vertices");
  Graph g = PathGraph(n, w);
  g.AddEdge(static_cast<Vertex>(n - 1), 0, w);
  return g;
}

inline Graph CompleteGraph(std::size_t n, double w = 1.0) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.AddEdge(u, v, w);
  }
  return g;
}

// The p-th bridge of a two-clique instance: distinct for p < k^2.
inline std::pair<Vertex, Vertex> TwoCliqueBridge(std::size_t k, std::size_t p) {
  const auto a = static_cast<Vertex>(p % k);
  const auto b = static_cast<Vertex>(k + (p / k + p) % k);
  return {a, b};
}

// Cliques on [0,k) and [k,2k) joined by `bridges` distinct edges.
inline Graph TwoCliques(std::size_t k, double clique_w, std::size_t bridges,
                        double bridge_w = 1.0) {
  internal::Require(bridges <= k * k, "too many bridge edges");
  Graph g(2 * k);
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = u + 1; v < k; ++v) {
      g.AddEdge(u, v, clique_w);
      g.AddEdge(static_cast<Vertex>(u + k), static_cast<Vertex>(v + k), clique_w);
    }
  }
  for (std::size_t p = 0; p < bridges; ++p) {
    const auto [a, b] = TwoCliqueBridge(k, p);
    g.AddEdge(a, b, bridge_w);
  }
  return g;
}

// Uniform simple graph with exactly m edges and integer weights in [wmin, wmax].
inline Graph RandomGnm(std::size_t n, std::size_t m, Rng& rng, std::uint64_t wmin = 1,
                       std::uint64_t wmax = 1) {
  internal::Require(m <= n * (n - 1) / 2, "too many edges for G(n,m)");
  internal::Require(wmin >= 1 && wmin <= wmax, "weight range");
  Graph g(n);
  while (g.num_edges() < m) {
    const auto u = static_cast<Vertex>(UniformIndex(rng, n));
    const auto v = static_cast<Vertex>(UniformIndex(rng, n));
    if (u == v || g.HasEdge(u, v)) continue;
    const auto w = wmin + UniformIndex(rng, wmax - wmin + 1);
    g.AddEdge(u, v, static_cast<double>(w));
  }
  return g;
}

// d-regular graph: a circulant with offsets 1..d/2, mixed by double-edge swaps.
inline Graph RandomRegular(std::size_t n, std::size_t d, Rng& rng, std::size_t swaps = 0) {
  internal::Require(d % 2 == 0 && d < n, "regular degree must be even and below n");
  std::vector<std::pair<Vertex, Vertex>> edges;
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (std::size_t off = 1; off <= d / 2; ++off) {
      const auto v = static_cast<Vertex>((u + off) % n);
      g.AddEdge(u, v, 1.0);
      edges.emplace_back(u, v);
    }
  }
  if (swaps == 0) swaps = 10 * edges.size();
  for (std::size_t i = 0; i < swaps; ++i) {
    const auto x = UniformIndex(rng, edges.size());
    const auto y = UniformIndex(rng, edges.size());
    auto [a, b] = edges[x];
    auto [c, e] = edges[y];
    if (Bernoulli(rng, 0.5)) std::swap(c, e);
    if (a == e || c == b || a == c || b == e) continue;
    if (g.HasEdge(a, e) || g.HasEdge(c, b)) continue;
    g.RemoveEdge(a, b);
    g.RemoveEdge(c, e);
    g.AddEdge(a, e, 1.0);
    g.AddEdge(c, b, 1.0);
    edges[x] = {a, e};
    edges[y] = {c, b};
  }
  return g;
}

// Disjoint union; vertices of `b` are shifted by a.num_vertices().
inline Graph DisjointUnion(const Graph& a, const Graph& b) {
  Graph g(a.num_vertices() + b.num_vertices());
  for (const auto& e : a.Edges()) g.AddEdge(e.u, e.v, e.w);
  const auto shift = static_cast<Vertex>(a.num_vertices());
  for (const auto& e : b.Edges()) g.AddEdge(e.u + shift, e.v + shift, e.w);
  return g;
}

// Equal-size clusters a on [0,k) and b on [k,2k) joined by the first
// `bridges` two-clique bridge edges.
inline Graph BridgedPair(const Graph& a, const Graph& b, std::size_t bridges,
                         double bridge_w = 1.0) {
  const std::size_t k = a.num_vertices();
  internal::Require(b.num_vertices() == k, "clusters must have equal size");
  internal::Require(bridges <= k * k, "too many bridge edges");
  Graph g = DisjointUnion(a, b);
  for (std::size_t p = 0; p < bridges; ++p) {
    const auto [u, v] = TwoCliqueBridge(k, p);
    g.AddEdge(u, v, bridge_w);
  }
  return g;
}

}  // namespace robustdyn::graph
