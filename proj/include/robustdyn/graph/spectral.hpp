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
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/graph/graph.hpp"
#include "robustdyn/graph/oracles.hpp"

namespace robustdyn::graph {

struct SpectralSweep {
  // Second smallest eigenvalue of the normalized Laplacian.
  double lambda2 = 0.0;
  // Best prefix cut in the order of D^{-1/2} v2; its value is an upper bound
  // on the conductance, flagged inexact.
  CutResult sweep;
  // Abstract operation count: n^3 for the eigensolve plus the sweep.
  std::uint64_t work = 0;

  // Cheeger: Phi >= lambda2 / 2.
  double conductance_lower_bound() const { return lambda2 / 2.0; }
};

// Requires every vertex to have positive degree.
inline SpectralSweep ComputeSpectralSweep(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw InvalidArgument("spectral sweep needs two vertices");
  Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(n));
  for (Vertex u = 0; u < n; ++u) {
    if (!(g.degree(u) > 0.0)) throw InvalidArgument("spectral sweep on isolated vertex");
    inv_sqrt(u) = 1.0 / std::sqrt(g.degree(u));
  }
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd norm = Eigen::MatrixXd::Identity(ni, ni);
  for (const auto& e : g.Edges()) {
    const double a = e.w * inv_sqrt(e.u) * inv_sqrt(e.v);
    norm(e.u, e.v) -= a;
    norm(e.v, e.u) -= a;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(norm);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");

  SpectralSweep out;
  out.lambda2 = std::max(0.0, solver.eigenvalues()(1));
  const Eigen::VectorXd y = inv_sqrt.cwiseProduct(solver.eigenvectors().col(1));

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return y(a) < y(b); });
  const double total = TotalVolume(g);
  std::vector<bool> in(n, false);
  double cut = 0.0, vol = 0.0;
  std::size_t best_prefix = 1;
  double best = kInfinity;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vertex x = order[i];
    for (const auto& nb : g.neighbors(x)) cut += in[nb.to] ? -nb.w : nb.w;
    in[x] = true;
    vol += g.degree(x);
    out.work += g.edge_count(x) + 1;
    const double denom = std::min(vol, total - vol);
    if (denom <= 0.0) continue;
    const double phi = std::max(cut, 0.0) / denom;
    if (phi < best) {
      best = phi;
      best_prefix = i + 1;
    }
  }
  out.sweep.value = best;
  out.sweep.exact = false;
  out.sweep.cut.side.assign(n, false);
  for (std::size_t i = 0; i < best_prefix; ++i) out.sweep.cut.side[order[i]] = true;
  out.work += static_cast<std::uint64_t>(n) * n * n;
  return out;
}

}  // namespace robustdyn::graph
