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
#include <vector>

#include "robustdyn/common/random.hpp"
#include "robustdyn/estimators/problem.hpp"
#include "robustdyn/graph/generators.hpp"
#include "robustdyn/graph/oracles.hpp"

namespace robustdyn::harness {

using estimators::Instance;
using estimators::Update;

// Oblivious workloads. Each is a pure function of its arguments and the rng.

// Inserts and deletes two-cliques bridges, keeping the bridge count in
// [lo, hi].
inline std::vector<Update> BridgeChurnScript(std::size_t k, const graph::Graph& start,
                                             std::size_t lo, std::size_t hi, std::size_t steps,
                                             Rng& rng) {
  graph::Graph g = start;
  std::size_t bridges = 0;
  for (const auto& e : g.Edges()) bridges += (e.u < k) != (e.v < k);
  std::vector<Update> script;
  while (script.size() < steps) {
    const auto [a, b] = graph::TwoCliqueBridge(k, UniformIndex(rng, k * k));
    const bool present = g.HasEdge(a, b);
    if (present && bridges > lo) {
      const auto up = graph::GraphUpdate::Delete(a, b);
      graph::ApplyUpdate(g, up);
      script.push_back(up);
      --bridges;
    } else if (!present && bridges < hi) {
      const auto up = graph::GraphUpdate::Insert(a, b, 1.0);
      graph::ApplyUpdate(g, up);
      script.push_back(up);
      ++bridges;
    }
  }
  return script;
}

// Alternates inserting fresh items with values in [1, vmax] and deleting the
// oldest item.
inline std::vector<Update> SumChurnScript(const Instance& x0, std::size_t steps, int vmax,
                                          Rng& rng) {
  Instance x = x0;
  std::uint64_t next = 1ULL << 32;
  std::vector<Update> script;
  for (std::size_t s = 0; s < steps; ++s) {
    Update up = estimators::SumUpdate::Insert(next++, 1.0 + UniformIndex(rng, vmax));
    if (s % 2 == 1 && !x.values.empty()) up = estimators::SumUpdate::Delete(x.values.begin()->first);
    estimators::ApplyUpdate(x, up);
    script.push_back(up);
  }
  return script;
}

// Random pair queries; every `churn_every`-th step deletes a random edge or
// reinserts the most recently deleted one instead.
inline std::vector<Update> PairQueryScript(const graph::Graph& start, std::size_t steps,
                                           std::size_t churn_every, Rng& rng) {
  graph::Graph g = start;
  std::vector<graph::Edge> removed;
  std::vector<Update> script;
  const auto n = g.num_vertices();
  for (std::size_t s = 0; s < steps; ++s) {
    if (churn_every > 0 && s % churn_every == churn_every - 1) {
      if (!removed.empty() && (removed.size() > 4 || Bernoulli(rng, 0.5))) {
        const auto e = removed.back();
        removed.pop_back();
        const auto up = graph::GraphUpdate::Insert(e.u, e.v, e.w);
        graph::ApplyUpdate(g, up);
        script.push_back(up);
        continue;
      }
      const auto edges = g.Edges();
      if (!edges.empty()) {
        const auto e = edges[UniformIndex(rng, edges.size())];
        removed.push_back(e);
        const auto up = graph::GraphUpdate::Delete(e.u, e.v);
        graph::ApplyUpdate(g, up);
        script.push_back(up);
        continue;
      }
    }
    script.push_back(estimators::PairUpdate{static_cast<graph::Vertex>(UniformIndex(rng, n)),
                                            static_cast<graph::Vertex>(UniformIndex(rng, n))});
  }
  return script;
}

}  // namespace robustdyn::harness
