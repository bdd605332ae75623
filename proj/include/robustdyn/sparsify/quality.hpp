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

// Quality measures comparing a sparsifier H against its source graph G.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/graph/graph.hpp"
#include "robustdyn/graph/oracles.hpp"

namespace robustdyn::sparsify {

struct RatioRange {
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;

  void Add(double r) {
    min = std::min(min, r);
    max = std::max(max, r);
  }
  void Merge(const RatioRange& o) {
    min = std::min(min, o.min);
    max = std::max(max, o.max);
  }
  // Two-sided: every ratio in [1/(1+eps), 1+eps].
  bool Within(double eps, double tol = 1e-9) const {
    return min >= 1.0 / (1.0 + eps) - tol && max <= 1.0 + eps + tol;
  }
};

// x^T L_H x / x^T L_G x over `count` standard Gaussian vectors.
inline RatioRange QuadraticFormRatios(const graph::Graph& g, const graph::Graph& h,
                                      std::size_t count, Rng& rng) {
  internal::Require(g.num_vertices() == h.num_vertices(), "vertex count mismatch");
  std::normal_distribution<double> normal;
  RatioRange r;
  std::vector<double> x(g.num_vertices());
  for (std::size_t i = 0; i < count; ++i) {
    for (double& v : x) v = normal(rng);
    const double qg = graph::QuadraticForm(g, x);
    if (qg <= 0.0) continue;
    r.Add(graph::QuadraticForm(h, x) / qg);
  }
  return r;
}

// Exact extreme ratios of x^T L_H x / x^T L_G x over x orthogonal to the
// all-ones vector, via a generalized eigenproblem. G must be connected.
inline RatioRange SpectralRatios(const graph::Graph& g, const graph::Graph& h) {
  internal::Require(g.num_vertices() == h.num_vertices(), "vertex count mismatch");
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  internal::Require(n >= 2, "spectral ratio needs two vertices");
  // Orthonormal basis of the complement of the all-ones direction.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
  basis.col(0).setOnes();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).rightCols(n - 1);
  const Eigen::MatrixXd a = q.transpose() * graph::Laplacian(h) * q;
  const Eigen::MatrixXd b = q.transpose() * graph::Laplacian(g) * q;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b);
  if (solver.info() != Eigen::Success) throw InvalidArgument("source graph must be connected");
  RatioRange r;
  r.min = solver.eigenvalues().minCoeff();
  r.max = solver.eigenvalues().maxCoeff();
  return r;
}

// delta_H(S) / delta_G(S) over every proper cut; cuts with delta_G = 0 must
// also have delta_H = 0 or the range is widened to infinity.
inline RatioRange AllCutRatios(const graph::Graph& g, const graph::Graph& h) {
  const std::size_t n = g.num_vertices();
  internal::Require(n == h.num_vertices(), "vertex count mismatch");
  if (n > graph::kMaxExactConductanceVertices) throw SizeLimitError("cut enumeration limited to 20 vertices");
  std::vector<bool> in(n, false);
  double cg = 0.0, ch = 0.0;
  RatioRange r;
  auto flip = [&](const graph::Graph& gr, graph::Vertex x, double& cut) {
    for (const auto& nb : gr.neighbors(x)) cut += (in[nb.to] == !in[x]) ? -nb.w : nb.w;
  };
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << (n - 1)); ++i) {
    const auto x = static_cast<graph::Vertex>(std::countr_zero(i));
    flip(g, x, cg);
    flip(h, x, ch);
    in[x] = !in[x];
    if (cg > 1e-12) {
      r.Add(std::max(ch, 0.0) / cg);
    } else if (ch > 1e-12) {
      r.Add(std::numeric_limits<double>::infinity());
    }
  }
  return r;
}

// R_H(u,v) / R_G(u,v) over the given pairs.
inline RatioRange ResistanceRatios(const graph::Graph& g, const graph::Graph& h,
                                   const std::vector<std::pair<graph::Vertex, graph::Vertex>>& pairs) {
  RatioRange r;
  for (const auto& [u, v] : pairs) {
    if (u == v) continue;
    r.Add(graph::EffectiveResistance(h, u, v) / graph::EffectiveResistance(g, u, v));
  }
  return r;
}

}  // namespace robustdyn::sparsify
