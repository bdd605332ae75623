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

// Plain-text graph and update-script formats.
//
//   graph:  "n m" then m lines "u v w" (0-indexed)
//   script: lines "+ u v w" or "- u v"; blank lines and '#' comments skipped
#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/graph/graph.hpp"

namespace robustdyn::graph {

inline Graph ReadGraph(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw InvalidArgument("graph header must be \"n m\"");
  Graph g(n);
  for (std::size_t i = 0; i < m; ++i) {
    Vertex u = 0, v = 0;
    double w = 0.0;
    if (!(in >> u >> v >> w)) {
      throw InvalidArgument("graph edge line " + std::to_string(i + 2) + " malformed");
    }
    g.AddEdge(u, v, w);
  }
  return g;
}

inline void WriteGraph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.Edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

inline std::vector<GraphUpdate> ReadUpdateScript(std::istream& in) {
  std::vector<GraphUpdate> script;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op[0] == '#') continue;
    Vertex u = 0, v = 0;
    if (!(ls >> u >> v)) {
      throw InvalidArgument("update line " + std::to_string(lineno) + " malformed");
    }
    if (op == "+") {
      double w = 1.0;
      if (!(ls >> w)) w = 1.0;
      script.push_back(GraphUpdate::Insert(u, v, w));
    } else if (op == "-") {
      script.push_back(GraphUpdate::Delete(u, v));
    } else {
      throw InvalidArgument("update line " + std::to_string(lineno) + ": unknown op " + op);
    }
  }
  return script;
}

inline void WriteUpdateScript(std::ostream& out, const std::vector<GraphUpdate>& script) {
  for (const auto& up : script) {
    if (up.is_insert()) {
      out << "+ " << up.u << ' ' << up.v << ' ' << up.w << '\n';
    } else {
      out << "- " << up.u << ' ' << up.v << '\n';
    }
  }
}

}  // namespace robustdyn::graph
