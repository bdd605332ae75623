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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "robustdyn/graph/generators.hpp"
#include "robustdyn/graph/oracles.hpp"
#include "robustdyn/sparsify/decomposition.hpp"
#include "robustdyn/sparsify/handle.hpp"
#include "robustdyn/sparsify/quality.hpp"
#include "robustdyn/sparsify/sampling.hpp"

namespace robustdyn::sparsify {
namespace {

// Every graph edge lies in exactly one piece with matching weight, and the
// ownership index is consistent with approximate degrees.
void ExpectConsistent(const ExpanderDecomposition& d) {
  const auto& g = d.graph();
  std::size_t piece_edges = 0;
  std::set<std::uint64_t> seen;
  for (const auto& [id, p] : d.pieces()) {
    ASSERT_GT(p.num_edges(), 0u);
    std::size_t owned_total = 0;
    for (const auto& [u, pv] : p.vertices()) {
      ASSERT_FALSE(pv.adj.empty());
      const auto deg = pv.adj.size();
      ASSERT_LE(deg, pv.deg_tilde);
      ASSERT_LE(pv.deg_tilde, 2 * deg);
      ASSERT_TRUE(std::is_sorted(pv.owned.begin(), pv.owned.end()));
      for (Vertex v : pv.owned) ASSERT_EQ(p.Owner(u, v), u);
      owned_total += pv.owned.size();
    }
    ASSERT_EQ(owned_total, p.num_edges());
    for (const auto& e : p.Edges()) {
      ASSERT_TRUE(seen.insert(EdgeKey(e.u, e.v)).second);
      ASSERT_EQ(g.Weight(e.u, e.v), e.w);
      ASSERT_EQ(d.PieceOf(e.u, e.v), id);
    }
    piece_edges += p.num_edges();
  }
  ASSERT_EQ(piece_edges, g.num_edges());
}

std::uint64_t LogEdgeChanges(const ExpanderDecomposition& d) {
  std::uint64_t total = 0;
  for (const auto& c : d.change_log()) total += c.edge_changes;
  return total;
}

TEST(SamplingProbTest, FormulaValues) {
  EXPECT_EQ(PieceSamplingProb(100, 0.5, 0.5, 4), 1.0);
  EXPECT_NEAR(PieceSamplingProb(16, 0.5, 0.5, 1u << 20), 0.5405096406579765, 1e-12);
  double prev = 1.0;
  for (std::uint64_t dt = 1; dt <= (1ull << 40); dt *= 2) {
    const double p = PieceSamplingProb(64, 0.25, 0.2, dt);
    EXPECT_LE(p, prev);
    prev = p;
  }
  SamplingConfig over;
  over.oversample = 8;
  EXPECT_EQ(SamplingProb(over, 100, 16), 1.0);
  EXPECT_EQ(SamplingProb(over, 100, 32), 0.5);
}

TEST(ApproxDegreeTest, PowersOfTwo) {
  EXPECT_EQ(ApproxDegree(1), 1u);
  EXPECT_EQ(ApproxDegree(5), 8u);
  EXPECT_EQ(ApproxDegree(8), 8u);
  EXPECT_THROW(ApproxDegree(0), InvalidArgument);
}

TEST(SubsetSampleTest, Extremes) {
  Rng rng(1);
  EXPECT_TRUE(SubsetSample(50, 0.0, rng).empty());
  const auto all = SubsetSample(50, 1.0, rng);
  ASSERT_EQ(all.size(), 50u);
  for (std::uint64_t i = 0; i < 50; ++i) EXPECT_EQ(all[i], i);
  EXPECT_TRUE(SubsetSample(0, 0.5, rng).empty());
}

TEST(SubsetSampleTest, MarginalsAndPairsMatchIndependentBernoulli) {
  constexpr std::size_t kN = 20;
  constexpr double kP = 0.3;
  constexpr int kTrials = 100000;
  Rng rng(2);
  std::vector<double> single(kN, 0);
  std::vector<std::vector<double>> pair(kN, std::vector<double>(kN, 0));
  std::uint64_t touches = 0;
  std::uint64_t picked = 0;
  for (int t = 0; t < kTrials; ++t) {
    const auto s = SubsetSample(kN, kP, rng, &touches);
    picked += s.size();
    for (auto i : s) {
      single[i] += 1;
      for (auto j : s) pair[i][j] += 1;
    }
  }
  EXPECT_LE(touches, picked + kTrials);
  const double sd1 = std::sqrt(kTrials * kP * (1 - kP));
  const double p2 = kP * kP;
  const double sd2 = std::sqrt(kTrials * p2 * (1 - p2));
  for (std::size_t i = 0; i < kN; ++i) {
    EXPECT_LE(std::abs(single[i] - kTrials * kP), 4 * sd1) << i;
    for (std::size_t j = i + 1; j < kN; ++j) {
      EXPECT_LE(std::abs(pair[i][j] - kTrials * p2), 4 * sd2) << i << "," << j;
    }
  }
  // The sample size follows Binomial(N, p).
  std::vector<double> size_hist(kN + 1, 0);
  Rng rng2(3);
  for (int t = 0; t < kTrials; ++t) size_hist[SubsetSample(kN, kP, rng2).size()] += 1;
  double stat = 0;
  int bins = 0;
  for (std::size_t k = 0; k <= kN; ++k) {
    const double pmf = std::exp(std::lgamma(kN + 1.0) - std::lgamma(k + 1.0) -
                                std::lgamma(kN - k + 1.0) + k * std::log(kP) +
                                (kN - k) * std::log1p(-kP));
    const double expect = kTrials * pmf;
    if (expect < 5) continue;
    stat += (size_hist[k] - expect) * (size_hist[k] - expect) / expect;
    ++bins;
  }
  boost::math::chi_squared chi(bins - 1);
  EXPECT_GT(boost::math::cdf(boost::math::complement(chi, stat)), 0.001);
}

TEST(DecomposeTest, TwoCliquesSplitAtBridge) {
  const auto g = graph::TwoCliques(5, 1.0, 1);
  DecompositionConfig cfg;
  cfg.phi = 0.3;
  const auto d = ExpanderDecomposition::Decompose(g, cfg);
  EXPECT_GE(d.pieces().size(), 2u);
  EXPECT_LE(d.pieces().size(), 3u);
  for (const auto& [id, p] : d.pieces()) {
    const auto local = p.LocalGraph(nullptr);
    EXPECT_GE(testing_oracles::ConductanceEnumerate(local), cfg.phi);
  }
  ExpectConsistent(d);
  EXPECT_EQ(d.cnt(), 0u);
}

TEST(DecomposeTest, SingleEdge) {
  graph::Graph g(2);
  g.AddEdge(0, 1, 4);
  const auto d = ExpanderDecomposition::Decompose(g);
  ASSERT_EQ(d.pieces().size(), 1u);
  EXPECT_EQ(d.pieces().begin()->second.certificate().conductance, 1.0);
}

TEST(DecomposeTest, PartitionAndCertificatesOnRandomGraphs) {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto g = graph::RandomGnm(30, 60 + UniformIndex(rng, 100), rng, 1, 8);
    const auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.15});
    ExpectConsistent(d);
    for (const auto& [id, p] : d.pieces()) {
      const auto local = p.LocalGraph(nullptr);
      if (local.num_vertices() <= 12) {
        EXPECT_GE(testing_oracles::ConductanceEnumerate(local), 0.15 - 1e-12);
      }
      if (p.certificate().kind == CertificateKind::kSpectral) {
        EXPECT_GE(p.certificate().conductance, 0.15);
      }
      // Weight classes never mix.
      double lo = 1e300, hi = 0;
      for (const auto& e : p.Edges()) {
        lo = std::min(lo, e.w);
        hi = std::max(hi, e.w);
      }
      EXPECT_EQ(std::floor(std::log2(lo)), std::floor(std::log2(hi)));
    }
    const double n = 30;
    EXPECT_LE(static_cast<double>(d.vertex_occurrences()), n * std::pow(std::log(n), 3));
  }
}

TEST(DecompUpdateTest, InteriorDeleteIsOneEdgeChange) {
  const auto g = graph::CompleteGraph(20);
  auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.2});
  ASSERT_EQ(d.pieces().size(), 1u);
  const auto r = d.Apply(GraphUpdate::Delete(3, 7));
  ASSERT_EQ(r.changes.size(), 1u);
  EXPECT_EQ(r.changes[0].kind, PieceChange::Kind::kEdgeDeleted);
  EXPECT_EQ(d.cnt(), 1u);
  ExpectConsistent(d);
}

TEST(DecompUpdateTest, InsertAddsBufferedSingleton) {
  auto d = ExpanderDecomposition::Decompose(graph::CycleGraph(6));
  const auto r = d.Apply(GraphUpdate::Insert(0, 3, 1));
  ASSERT_EQ(r.changes.size(), 1u);
  EXPECT_EQ(r.changes[0].kind, PieceChange::Kind::kPieceAdded);
  EXPECT_EQ(r.changes[0].edge_changes, 1u);
  EXPECT_EQ(d.cnt(), 1u);
  const Piece* p = d.FindPiece(d.PieceOf(0, 3));
  ASSERT_NE(p, nullptr);
  EXPECT_TRUE(p->buffered());
  EXPECT_EQ(p->num_edges(), 1u);
  EXPECT_THROW(d.Apply(GraphUpdate::Insert(0, 3, 1)), InvalidUpdate);
  EXPECT_THROW(d.Apply(GraphUpdate::Delete(0, 2)), InvalidUpdate);
}

TEST(DecompUpdateTest, RandomScriptsKeepInvariantsAndAmortizedChanges) {
  Rng rng(5);
  auto g = graph::RandomGnm(40, 200, rng, 1, 4);
  auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.1});
  constexpr int kSteps = 10000;
  for (int i = 0; i < kSteps; ++i) {
    GraphUpdate up;
    do {
      const auto u = static_cast<Vertex>(UniformIndex(rng, 40));
      const auto v = static_cast<Vertex>(UniformIndex(rng, 40));
      if (u == v) continue;
      up = g.HasEdge(u, v) ? GraphUpdate::Delete(u, v)
                           : GraphUpdate::Insert(u, v, 1.0 + UniformIndex(rng, 4));
      break;
    } while (true);
    graph::ApplyUpdate(g, up);
    const auto before = d.cnt();
    const auto r = d.Apply(up);
    ASSERT_EQ(d.cnt() - before, r.edge_changes());
    if (i % 500 == 0) ExpectConsistent(d);
  }
  ExpectConsistent(d);
  EXPECT_TRUE(d.graph() == g);
  EXPECT_EQ(d.cnt(), LogEdgeChanges(d));
  const double amortized = static_cast<double>(d.cnt()) / kSteps;
  EXPECT_LE(amortized, std::pow(std::log(40.0), 2));
}

TEST(SamplePieceTest, ProbabilityOneKeepsPiece) {
  const auto g = graph::CompleteGraph(10, 3.0);
  const auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.3});
  const auto h = Sparsify(d, 10, SamplingConfig{}, Rng(1));
  EXPECT_TRUE(h.graph() == g);
}

TEST(SamplePieceTest, WeightsAreUnbiased) {
  const auto g = graph::CompleteGraph(8, 2.0);
  const auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.3});
  const Piece& piece = d.pieces().begin()->second;
  SamplingConfig cfg;
  cfg.oversample = 2;  // deg~ 8 -> p = 1/2
  constexpr int kTrials = 10000;
  std::vector<double> sum(64, 0.0);
  Rng rng(6);
  for (int t = 0; t < kTrials; ++t) {
    SamplePiece(piece, cfg, 8, rng, [&](Vertex u, Vertex v, double w) {
      EXPECT_DOUBLE_EQ(w, 4.0);
      sum[std::min(u, v) * 8 + std::max(u, v)] += w;
    });
  }
  const double sd = 2.0 * std::sqrt(1.0 / kTrials);  // w * sqrt((1-p)/p) / sqrt(T)
  for (const auto& e : g.Edges()) {
    EXPECT_LE(std::abs(sum[e.u * 8 + e.v] / kTrials - 2.0), 4 * sd);
  }
}

TEST(SamplePieceTest, WorkScalesWithKeptEdges) {
  Rng rng(7);
  const auto g = graph::RandomRegular(64, 32, rng);
  const auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.1});
  SamplingConfig cfg;
  cfg.oversample = 2;
  const auto h = Sparsify(d, 10, cfg, Rng(8));
  // About 2K/deg~ of the edges are kept, and work tracks them, not m.
  EXPECT_LT(h.issue_work(), g.num_edges() / 2);
  EXPECT_LE(h.issue_work(), 2 * h.graph().num_edges() + 2 * d.vertex_occurrences());
}

TEST(SparsifyTest, MaintainedSamplesFollowCurrentOwnershipRates) {
  // After a long script, every H edge must carry w / p(owner) for the owner's
  // current deg~, and inclusion frequencies across handles must match p.
  Rng rng(9);
  auto g = graph::RandomRegular(40, 16, rng);
  auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.05});
  SamplingConfig cfg;
  cfg.oversample = 4;
  constexpr int kHandles = 400;
  std::vector<SparsifierHandle> handles;
  for (int i = 0; i < kHandles; ++i) {
    handles.push_back(Sparsify(d, SparsifierHandle::kUnlimited, cfg, Rng(DeriveSeed(10, i))));
  }
  for (int step = 0; step < 60; ++step) {
    const auto edges = d.graph().Edges();
    GraphUpdate up;
    if (step % 3 == 2) {
      while (true) {
        const auto u = static_cast<Vertex>(UniformIndex(rng, 40));
        const auto v = static_cast<Vertex>(UniformIndex(rng, 40));
        if (u != v && !d.graph().HasEdge(u, v)) {
          up = GraphUpdate::Insert(u, v, 1);
          break;
        }
      }
    } else {
      const auto& e = edges[UniformIndex(rng, edges.size())];
      up = GraphUpdate::Delete(e.u, e.v);
    }
    const auto r = d.Apply(up);
    for (auto& h : handles) {
      auto copy = h.graph();
      for (const auto& delta : h.Maintain(r)) graph::ApplyUpdate(copy, delta);
      ASSERT_TRUE(copy == h.graph());
    }
  }
  std::map<std::uint64_t, int> hits;
  for (const auto& h : handles) {
    for (const auto& e : h.graph().Edges()) {
      const Piece* p = d.FindPiece(d.PieceOf(e.u, e.v));
      ASSERT_NE(p, nullptr);
      const Vertex owner = p->Owner(e.u, e.v);
      const double prob = SamplingProb(cfg, 40, p->vertex(owner).deg_tilde);
      ASSERT_NEAR(e.w, d.graph().Weight(e.u, e.v) / prob, 1e-12);
      ++hits[EdgeKey(e.u, e.v)];
    }
  }
  int checked = 0;
  for (const auto& e : d.graph().Edges()) {
    const Piece* p = d.FindPiece(d.PieceOf(e.u, e.v));
    const double prob = SamplingProb(cfg, 40, p->vertex(p->Owner(e.u, e.v)).deg_tilde);
    if (prob >= 1.0) continue;
    const double sd = std::sqrt(kHandles * prob * (1 - prob));
    EXPECT_LE(std::abs(hits[EdgeKey(e.u, e.v)] - kHandles * prob), 4.5 * sd);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(SparsifyTest, UnchangedDegreeBucketsOnlyTouchDirectEdges) {
  const auto g = graph::CompleteGraph(12);  // deg 11, deg~ 16
  auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.2});
  SamplingConfig cfg;
  cfg.oversample = 4;
  auto h = Sparsify(d, 100, cfg, Rng(11));
  const auto before = h.graph();
  // Deleting (0,1) leaves both endpoints at degree 10, still deg~ 16.
  const auto r = d.Apply(GraphUpdate::Delete(0, 1));
  EXPECT_TRUE(r.degree_changes.empty());
  const auto delta = h.Maintain(r);
  ASSERT_LE(delta.size(), 1u);
  if (before.HasEdge(0, 1)) {
    ASSERT_EQ(delta.size(), 1u);
    EXPECT_EQ(delta[0], GraphUpdate::Delete(0, 1));
  }
}

TEST(SparsifyTest, ObliviousScriptKeepsSpectralSandwich) {
  Rng rng(12);
  auto g = graph::RandomRegular(60, 14, rng);
  auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.1});
  SamplingConfig cfg;
  cfg.epsilon = 0.25;
  cfg.phi = 0.1;
  auto h = Sparsify(d, SparsifierHandle::kUnlimited, cfg, Rng(13));
  for (int step = 0; step < 200; ++step) {
    const auto edges = d.graph().Edges();
    const auto& e = edges[UniformIndex(rng, edges.size())];
    GraphUpdate up = GraphUpdate::Delete(e.u, e.v);
    if (step % 2 == 1) {
      while (true) {
        const auto u = static_cast<Vertex>(UniformIndex(rng, 60));
        const auto v = static_cast<Vertex>(UniformIndex(rng, 60));
        if (u != v && !d.graph().HasEdge(u, v)) {
          up = GraphUpdate::Insert(u, v, 1);
          break;
        }
      }
    }
    h.Maintain(d.Apply(up));
    Rng qrng(DeriveSeed(14, step));
    EXPECT_TRUE(QuadraticFormRatios(d.graph(), h.graph(), 100, qrng).Within(0.25));
  }
}

TEST(SparsifyTest, IndependentHandlesDiffer) {
  Rng rng(15);
  const auto g = graph::RandomRegular(60, 30, rng);
  const auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.1});
  SamplingConfig cfg;
  cfg.oversample = 4;
  const auto a = Sparsify(d, 10, cfg, Rng(1));
  const auto b = Sparsify(d, 10, cfg, Rng(2));
  EXPECT_FALSE(a.graph() == b.graph());
  const auto a2 = Sparsify(d, 10, cfg, Rng(1));
  EXPECT_TRUE(a.graph() == a2.graph());
}

TEST(SparsifyTest, BudgetExhaustion) {
  auto d = ExpanderDecomposition::Decompose(graph::CompleteGraph(10), {.phi = 0.2});
  auto h = Sparsify(d, 2, SamplingConfig{}, Rng(3));
  h.Maintain(d.Apply(GraphUpdate::Delete(0, 1)));
  h.Maintain(d.Apply(GraphUpdate::Delete(0, 2)));
  const auto r = d.Apply(GraphUpdate::Delete(0, 3));
  EXPECT_TRUE(h.exhausted());
  EXPECT_THROW(h.Maintain(r), BudgetExhausted);
  auto fresh = h.Refresh(Rng(4));
  EXPECT_FALSE(fresh.exhausted());
  EXPECT_TRUE(fresh.graph() == d.graph());
}

TEST(RefreshTest, CheaperThanDecomposeAndIndependentOfDensity) {
  Rng rng(16);
  SamplingConfig cfg;
  cfg.oversample = 8;
  std::vector<double> refresh;
  // 5000 edges exceed a simple graph on 100 vertices; the dense case is K100.
  for (std::size_t m : {1000u, 4950u}) {
    const auto g = graph::RandomGnm(100, m, rng);
    const auto d = ExpanderDecomposition::Decompose(g, {.phi = 0.1});
    double total = 0;
    for (int i = 0; i < 20; ++i) {
      total += static_cast<double>(Sparsify(d, 10, cfg, Rng(DeriveSeed(17, i))).issue_work());
    }
    refresh.push_back(total / 20);
    EXPECT_LT(refresh.back(), 0.2 * static_cast<double>(d.preprocess_work()));
  }
  EXPECT_LT(std::abs(refresh[0] - refresh[1]) / refresh[0], 0.10)
      << refresh[0] << " vs " << refresh[1];
}

TEST(QualityTest, ExactSpectralRatioBoundsSampledRatios) {
  Rng rng(18);
  const auto g = graph::RandomRegular(14, 6, rng);
  graph::Graph h = g;
  h.SetWeight(0, h.neighbors(0)[0].to, 1.7);
  const auto exact = SpectralRatios(g, h);
  Rng qrng(19);
  const auto sampled = QuadraticFormRatios(g, h, 200, qrng);
  const auto cuts = AllCutRatios(g, h);
  EXPECT_GE(sampled.min, exact.min - 1e-9);
  EXPECT_LE(sampled.max, exact.max + 1e-9);
  EXPECT_GE(cuts.min, exact.min - 1e-9);
  EXPECT_LE(cuts.max, exact.max + 1e-9);
  EXPECT_NEAR(SpectralRatios(g, g).max, 1.0, 1e-9);
}

TEST(DumpTest, ListsPiecesAndChanges) {
  auto d = ExpanderDecomposition::Decompose(graph::TwoCliques(4, 1, 1), {.phi = 0.3});
  d.Apply(GraphUpdate::Insert(0, 5, 1));
  std::ostringstream out, log;
  d.Dump(out);
  d.DumpChangeLog(log);
  EXPECT_NE(out.str().find("cert="), std::string::npos);
  EXPECT_EQ(log.str(), "piece_added piece=" + std::to_string(d.PieceOf(0, 5)) +
                           " edge_changes=1\n");
}

}  // namespace
}  // namespace robustdyn::sparsify
