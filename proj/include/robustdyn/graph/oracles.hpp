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

// Exact ground-truth oracles. These are deliberately simple dense or
// enumerative routines; size guards make accidental use on large inputs loud.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/graph/graph.hpp"

namespace robustdyn::graph {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline void RequireProperCut(const Graph& g, const Cut& c) {
  if (c.side.size() != g.num_vertices()) throw InvalidArgument("cut size mismatch");
  if (!c.proper()) throw InvalidArgument("cut side must be nonempty and proper");
}

inline double CutWeight(const Graph& g, const Cut& c) {
  RequireProperCut(g, c);
  double total = 0.0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (!c.side[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      if (!c.side[nb.to]) total += nb.w;
    }
  }
  return total;
}

// vol(S).
inline double Volume(const Graph& g, const Cut& c) {
  RequireProperCut(g, c);
  double vol = 0.0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (c.side[u]) vol += g.degree(u);
  }
  return vol;
}

inline double TotalVolume(const Graph& g) {
  double vol = 0.0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) vol += g.degree(u);
  return vol;
}

// +inf when the smaller side has zero volume.
inline double CutConductance(const Graph& g, const Cut& c) {
  const double vol_s = Volume(g, c);
  const double denom = std::min(vol_s, TotalVolume(g) - vol_s);
  return denom > 0.0 ? CutWeight(g, c) / denom : kInfinity;
}

// Component label per vertex, labels assigned in order of smallest member.
inline std::vector<std::uint32_t> ConnectedComponents(const Graph& g,
                                                       std::uint32_t* count = nullptr) {
  const std::size_t n = g.num_vertices();
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n, kUnset);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(u)) {
        if (label[nb.to] == kUnset) {
          label[nb.to] = next;
          stack.push_back(nb.to);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

struct CutResult {
  double value = 0.0;
  Cut cut;
  bool exact = true;
};

inline constexpr std::size_t kMaxExactConductanceVertices = 20;

// Minimum conductance over all proper cuts with positive volume on both sides,
// by Gray-code enumeration of the 2^(n-1) cuts that exclude the last vertex.
inline CutResult ConductanceMin(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxExactConductanceVertices) {
    throw SizeLimitError("exact conductance limited to " +
                         std::to_string(kMaxExactConductanceVertices) + " vertices");
  }
  if (n < 2 || g.num_edges() == 0) throw InvalidArgument("conductance needs an edge");
  const double total = TotalVolume(g);
  std::vector<bool> in(n, false);
  double cut = 0.0, vol = 0.0;
  CutResult best{kInfinity, Cut{std::vector<bool>(n, false)}, true};
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < limit; ++i) {
    const auto x = static_cast<Vertex>(std::countr_zero(i));
    const bool joining = !in[x];
    for (const auto& nb : g.neighbors(x)) {
      // Edges to S stop or start crossing as x moves.
      cut += (in[nb.to] == joining) ? -nb.w : nb.w;
    }
    in[x] = joining;
    vol += joining ? g.degree(x) : -g.degree(x);
    const double denom = std::min(vol, total - vol);
    if (denom <= 0.0) continue;
    const double phi = std::max(cut, 0.0) / denom;
    if (phi < best.value) {
      best.value = phi;
      best.cut.side = in;
    }
  }
  return best;
}

inline constexpr std::size_t kMaxStoerWagnerVertices = 400;

// Global minimum cut by Stoer-Wagner on a dense weight matrix, O(n^3).
// A disconnected graph yields 0 with one component as the witness.
inline CutResult MinCutExact(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw InvalidArgument("min cut needs at least two vertices");
  if (n > kMaxStoerWagnerVertices) throw SizeLimitError("Stoer-Wagner limited to 400 vertices");
  std::uint32_t comps = 0;
  const auto label = ConnectedComponents(g, &comps);
  if (comps > 1) {
    Cut c{std::vector<bool>(n, false)};
    for (Vertex v = 0; v < n; ++v) c.side[v] = (label[v] == 0);
    return {0.0, std::move(c), true};
  }
  std::vector<double> w(n * n, 0.0);
  for (Vertex u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) w[u * n + nb.to] = nb.w;
  }
  std::vector<std::vector<Vertex>> group(n);
  for (Vertex v = 0; v < n; ++v) group[v] = {v};
  std::vector<Vertex> active(n);
  for (Vertex v = 0; v < n; ++v) active[v] = v;
  std::vector<double> key(n);
  std::vector<bool> added(n);
  double best = kInfinity;
  std::vector<Vertex> best_side;
  while (active.size() > 1) {
    for (Vertex v : active) {
      key[v] = 0.0;
      added[v] = false;
    }
    Vertex prev = active[0];
    added[prev] = true;
    for (Vertex v : active) key[v] += w[prev * n + v];
    for (std::size_t step = 1; step < active.size(); ++step) {
      Vertex sel = 0;
      double sel_key = -1.0;
      for (Vertex v : active) {
        if (!added[v] && key[v] > sel_key) {
          sel = v;
          sel_key = key[v];
        }
      }
      if (step + 1 == active.size()) {
        if (sel_key < best) {
          best = sel_key;
          best_side = group[sel];
        }
        for (Vertex v : active) {
          w[prev * n + v] += w[sel * n + v];
          w[v * n + prev] = w[prev * n + v];
        }
        w[prev * n + prev] = 0.0;
        group[prev].insert(group[prev].end(), group[sel].begin(), group[sel].end());
        active.erase(std::find(active.begin(), active.end(), sel));
        break;
      }
      added[sel] = true;
      for (Vertex v : active) key[v] += w[sel * n + v];
      prev = sel;
    }
  }
  return {best, Cut::FromVertices(n, best_side), true};
}

// Sum over edges of w(u,v) (x_u - x_v)^2.
inline double QuadraticForm(const Graph& g, const std::vector<double>& x) {
  if (x.size() != g.num_vertices()) throw InvalidArgument("vector size mismatch");
  double total = 0.0;
  for (const auto& e : g.Edges()) {
    const double d = x[e.u] - x[e.v];
    total += e.w * d * d;
  }
  return total;
}

inline Eigen::MatrixXd Laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.Edges()) {
    l(e.u, e.u) += e.w;
    l(e.v, e.v) += e.w;
    l(e.u, e.v) -= e.w;
    l(e.v, e.u) -= e.w;
  }
  return l;
}

inline constexpr std::size_t kMaxDenseSolveVertices = 600;

// R(u,v) by grounding v inside the component of u and solving L x = e_u.
inline double EffectiveResistance(const Graph& g, Vertex u, Vertex v) {
  const std::size_t n = g.num_vertices();
  if (u >= n || v >= n) throw InvalidArgument("vertex out of range");
  if (u == v) return 0.0;
  const auto label = ConnectedComponents(g);
  if (label[u] != label[v]) throw InfiniteResistance("vertices lie in different components");
  std::vector<Eigen::Index> local(n, -1);
  Eigen::Index k = 0;
  for (Vertex x = 0; x < n; ++x) {
    if (label[x] == label[u] && x != v) local[x] = k++;
  }
  if (static_cast<std::size_t>(k) > kMaxDenseSolveVertices) {
    throw SizeLimitError("dense resistance solve limited to 600 vertices");
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(k, k);
  for (Vertex x = 0; x < n; ++x) {
    if (label[x] != label[u]) continue;
    for (const auto& nb : g.neighbors(x)) {
      if (local[x] >= 0) {
        l(local[x], local[x]) += nb.w;
        if (local[nb.to] >= 0) l(local[x], local[nb.to]) -= nb.w;
      }
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  rhs(local[u]) = 1.0;
  const Eigen::VectorXd x = l.ldlt().solve(rhs);
  return x(local[u]);
}

inline std::vector<double> SingleSourceDistances(const Graph& g, Vertex s) {
  const std::size_t n = g.num_vertices();
  if (s >= n) throw InvalidArgument("vertex out of range");
  std::vector<double> dist(n, kInfinity);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      const double nd = d + nb.w;
      if (nd < dist[nb.to]) {
        dist[nb.to] = nd;
        heap.push({nd, nb.to});
      }
    }
  }
  return dist;
}

inline double DistanceExact(const Graph& g, Vertex s, Vertex t) {
  if (t >= g.num_vertices()) throw InvalidArgument("vertex out of range");
  return SingleSourceDistances(g, s)[t];
}

}  // namespace robustdyn::graph
