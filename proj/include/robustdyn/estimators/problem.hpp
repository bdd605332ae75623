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

// Problem inputs, the updates that change them, and exact answers.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <variant>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/graph/graph.hpp"
#include "robustdyn/graph/oracles.hpp"

namespace robustdyn::estimators {

using graph::Graph;
using graph::GraphUpdate;
using graph::Vertex;

enum class Problem { kMinCut, kEffectiveResistance, kDistance, kSum };

inline const char* ProblemName(Problem p) {
  switch (p) {
    case Problem::kMinCut: return "mincut";
    case Problem::kEffectiveResistance: return "effres";
    case Problem::kDistance: return "distance";
    case Problem::kSum: return "sum";
  }
  return "?";
}

// Insert or delete one item of a multiset of numbers, addressed by id.
struct SumUpdate {
  enum class Kind { kInsert, kDelete };

  Kind kind = Kind::kInsert;
  std::uint64_t id = 0;
  double value = 0.0;  // Ignored for deletions.

  static SumUpdate Insert(std::uint64_t id, double value) { return {Kind::kInsert, id, value}; }
  static SumUpdate Delete(std::uint64_t id) { return {Kind::kDelete, id, 0.0}; }

  friend bool operator==(const SumUpdate&, const SumUpdate&) = default;
};

// Sets the (src, snk) register queried by pair problems.
struct PairUpdate {
  Vertex src = 0;
  Vertex snk = 0;

  friend bool operator==(const PairUpdate&, const PairUpdate&) = default;
};

using Update = std::variant<GraphUpdate, SumUpdate, PairUpdate>;

struct Instance {
  Graph graph;
  std::map<std::uint64_t, double> values;
  Vertex src = 0;
  Vertex snk = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline bool IsLegal(const Instance& x, const Update& up) {
  return std::visit(
      [&](const auto& u) -> bool {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, GraphUpdate>) {
          return graph::IsLegal(x.graph, u);
        } else if constexpr (std::is_same_v<T, SumUpdate>) {
          return u.kind == SumUpdate::Kind::kInsert ? x.values.count(u.id) == 0
                                                    : x.values.count(u.id) == 1;
        } else {
          return u.src < x.graph.num_vertices() && u.snk < x.graph.num_vertices();
        }
      },
      up);
}

inline void ApplyUpdate(Instance& x, const Update& up) {
  if (!IsLegal(x, up)) throw InvalidUpdate("illegal update for instance");
  std::visit(
      [&](const auto& u) {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, GraphUpdate>) {
          graph::ApplyUpdate(x.graph, u);
        } else if constexpr (std::is_same_v<T, SumUpdate>) {
          if (u.kind == SumUpdate::Kind::kInsert) {
            x.values.emplace(u.id, u.value);
          } else {
            x.values.erase(u.id);
          }
        } else {
          x.src = u.src;
          x.snk = u.snk;
        }
      },
      up);
}

inline double ExactSum(const Instance& x) {
  double total = 0.0;
  for (const auto& kv : x.values) total += kv.second;
  return total;
}

// Effective resistance across components is +inf.
inline double ExactValue(Problem p, const Instance& x) {
  switch (p) {
    case Problem::kMinCut:
      return graph::MinCutExact(x.graph).value;
    case Problem::kEffectiveResistance:
      try {
        return graph::EffectiveResistance(x.graph, x.src, x.snk);
      } catch (const InfiniteResistance&) {
        return graph::kInfinity;
      }
    case Problem::kDistance:
      return graph::DistanceExact(x.graph, x.src, x.snk);
    case Problem::kSum:
      return ExactSum(x);
  }
  throw InvalidArgument("unknown problem");
}

inline std::string Describe(const Update& up) {
  return std::visit(
      [](const auto& u) -> std::string {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, GraphUpdate>) {
          return (u.is_insert() ? "+ " : "- ") + std::to_string(u.u) + ' ' + std::to_string(u.v) +
                 (u.is_insert() ? ' ' + std::to_string(u.w) : std::string());
        } else if constexpr (std::is_same_v<T, SumUpdate>) {
          return (u.kind == SumUpdate::Kind::kInsert ? "+item " : "-item ") + std::to_string(u.id) +
                 (u.kind == SumUpdate::Kind::kInsert ? ' ' + std::to_string(u.value) : std::string());
        } else {
          return "pair " + std::to_string(u.src) + ' ' + std::to_string(u.snk);
        }
      },
      up);
}

}  // namespace robustdyn::estimators
