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

#include <cmath>
#include <ostream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "robustdyn/harness/game.hpp"

namespace robustdyn::harness {

using Json = nlohmann::json;

// Non-finite values are written as strings so every line stays valid JSON.
inline Json Number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

inline Json ToJson(const Update& up) {
  return std::visit(
      [](const auto& u) -> Json {
        using T = std::decay_t<decltype(u)>;
        if constexpr (std::is_same_v<T, graph::GraphUpdate>) {
          Json j = {{"op", u.is_insert() ? "insert" : "delete"}, {"u", u.u}, {"v", u.v}};
          if (u.is_insert()) j["w"] = u.w;
          return j;
        } else if constexpr (std::is_same_v<T, estimators::SumUpdate>) {
          Json j = {{"op", u.kind == estimators::SumUpdate::Kind::kInsert ? "item_insert"
                                                                         : "item_delete"},
                    {"id", u.id}};
          if (u.kind == estimators::SumUpdate::Kind::kInsert) j["value"] = u.value;
          return j;
        } else {
          return Json{{"op", "pair"}, {"src", u.src}, {"snk", u.snk}};
        }
      },
      up);
}

// The transcript as the adversary may see it. Hidden wrapper state has no
// field here by construction.
inline Json ToJson(const Transcript& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries()) {
    entries.push_back({{"update", e.update ? ToJson(*e.update) : Json(nullptr)},
                       {"output", Number(e.output)}});
  }
  const auto& x0 = t.initial();
  Json initial = {{"vertices", x0.graph.num_vertices()},
                  {"edges", x0.graph.num_edges()},
                  {"items", x0.values.size()},
                  {"src", x0.src},
                  {"snk", x0.snk}};
  return {{"initial", initial}, {"entries", entries}, {"refresh_boundaries", t.refresh_boundaries()}};
}

inline Json ToJson(const StepRecord& r) {
  Json j = {{"step", r.step},
            {"truth", Number(r.truth)},
            {"output", Number(r.output)},
            {"accurate", r.accurate},
            {"work_preprocess", r.work.preprocess},
            {"work_update", r.work.update},
            {"work_query", r.work.query},
            {"recommits", r.recommits},
            {"refresh", r.refresh}};
  if (r.copy_fraction >= 0.0) j["copy_fraction"] = r.copy_fraction;
  return j;
}

inline Json Summary(const GameResult& res) {
  Json j = {{"algorithm", res.algorithm},
            {"adversary", res.adversary},
            {"model", ModelName(res.model)},
            {"steps", res.records.size()},
            {"accuracy_frequency", res.accuracy_frequency()},
            {"all_accurate", res.all_accurate()}};
  if (res.violation) j["violation"] = *res.violation;
  if (!res.records.empty()) {
    const auto& w = res.records.back().work;
    j["work_total"] = w.total();
    j["recommits"] = res.records.back().recommits;
  }
  return j;
}

// One JSON object per line; `extra` fields are merged into each step line.
inline void WriteJsonl(std::ostream& out, const GameResult& res, const Json& extra = Json::object()) {
  for (const auto& r : res.records) {
    Json j = ToJson(r);
    j.update(extra);
    out << j.dump() << '\n';
  }
}

}  // namespace robustdyn::harness
