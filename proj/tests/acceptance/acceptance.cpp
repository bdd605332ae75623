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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. `acceptance 3 10` runs a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.hpp"
#include "robustdyn/dp/grid.hpp"
#include "robustdyn/dp/median.hpp"
#include "robustdyn/dp/privacy.hpp"
#include "robustdyn/graph/generators.hpp"
#include "robustdyn/harness/experiments.hpp"
#include "robustdyn/harness/metrics.hpp"
#include "robustdyn/separation/boxes.hpp"
#include "robustdyn/separation/list_of_outputs.hpp"
#include "robustdyn/separation/oracle.hpp"
#include "robustdyn/sparsify/decomposition.hpp"
#include "robustdyn/sparsify/handle.hpp"
#include "robustdyn/sparsify/quality.hpp"
#include "robustdyn/sparsify/sampling.hpp"
#include "robustdyn/wrapper/params.hpp"

namespace {

using namespace robustdyn;

// Tolerances and targets.
constexpr double kFormulaRelTol = 1e-12;
constexpr double kRatioTol = 1e-12;
constexpr double kDistTol = 1e-12;
constexpr double kBudgetTol = 1e-9;
constexpr int kRankTrials = 10000;
constexpr int kSparsifierResamples = 500;
constexpr double kSparsifierFailure = 0.01;
constexpr double kChiSquareFloor = 0.001;
constexpr double kTouchConstant = 2.0;
constexpr double kRefreshSpread = 0.10;
constexpr double kRefreshOverDecompose = 0.2;
constexpr double kSingleSuccess = 0.9;
constexpr double kCopyLevel = 0.8;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool Close(double got, double want) {
  return std::abs(got - want) <= kFormulaRelTol * std::max(1.0, std::abs(want));
}

// ---- 1 ------------------------------------------------------------------

struct CompositionRow {
  std::uint64_t k;
  double eps, delta, delta_prime, want_eps, want_delta;
};
struct SubsampleRow {
  double eps;
  std::uint64_t k, n;
  double want;
};

// Substituted with 40-digit arithmetic outside this codebase.
constexpr CompositionRow kCompositionRows[] = {
    {1, 1.0, 0.01, 1e-09, 8.4378980788680417092, 0.010000001000000000208},
    {2, 0.8841, 0.01, 0.5, 4.5986543034490411464, 0.52000000000000000042},
    {3, 1.0, 0.001, 1.0, 6.0, 1.0030000000000000001},
    {5, 0.2399, 0.0, 1e-09, 4.0290191990017620808, 1.0000000000000000623e-9},
    {10, 0.001, 0.001, 1e-12, 0.02352788000476799668, 0.010000000001000000208},
    {20, 0.75, 1e-06, 0.001, 34.966936022018324419, 0.0010200000000000000199},
    {50, 0.25, 1e-06, 0.5, 8.3313865278942443909, 0.50005},
    {100, 1.0, 0.0, 0.05, 224.47746830680816524, 0.050000000000000002776},
    {1000, 1.0, 1e-06, 0.01, 2095.9705182437616239, 0.011000000000000000163},
    {10000, 0.4574, 1e-06, 1e-12, 4524.3192418359827122, 0.010000000000999999547},
    {1, 0.25, 1e-06, 1.0, 0.125, 1.000001},
    {2, 0.5, 0.01, 1.0, 1.0, 1.0200000000000000004},
    {3, 0.5, 0.01, 1.0, 1.5, 1.0300000000000000006},
    {5, 1.0, 1e-06, 0.5, 12.632768847734159341, 0.500005},
    {10, 0.75, 0.01, 1e-12, 28.880910003575997142, 0.10000000000100000208},
    {20, 0.01, 0.0, 1e-09, 0.29191155473128487818, 1.0000000000000000623e-9},
    {50, 0.5, 0.001, 1e-06, 43.584610944249192265, 0.050001000000000001041},
    {100, 0.05, 0.0, 1.0, 0.50000000000000005551, 1.0},
    {1000, 1.0, 1e-06, 0.5, 2037.2329741105903413, 0.50099999999999999995},
    {10000, 0.1, 0.01, 1.0, 200.0000000000000222, 101.00000000000000208},
    {1, 0.5, 0.001, 0.001, 2.3584610944249192207, 0.0020000000000000000416},
    {2, 0.1, 0.0, 1e-12, 1.0913043539513864589, 9.9999999999999997989e-13},
    {3, 0.1498, 0.001, 1.0, 0.13464023999999997972, 1.0030000000000000001},
    {5, 0.05, 1e-06, 1.0, 0.025000000000000002776, 1.000005},
    {10, 0.75, 0.001, 1e-12, 28.880910003575997142, 0.010000000001000000208},
    {20, 0.25, 0.001, 1e-09, 9.6977888682821218005, 0.020000001000000000416},
    {50, 1.0, 1e-06, 1.0, 100.0, 1.00005},
    {100, 0.01, 0.001, 1.0, 0.020000000000000000833, 1.1000000000000000021},
    {1000, 0.1, 0.001, 0.05, 27.74045512040990131, 1.0500000000000000236},
    {10000, 0.5, 1e-09, 1.0, 5000.0, 1.00001},
    {1, 0.001, 0.0, 1.0, 2.0000000000000000833e-6, 1.0},
    {2, 0.001, 0.01, 0.001, 0.0052605217697569320803, 0.021000000000000000437},
    {3, 0.2478, 0.0, 0.01, 1.6709951345457676796, 0.010000000000000000208},
    {5, 0.25, 1e-09, 1e-12, 4.7806453406727748141, 5.0010000000000003114e-9},
    {10, 0.3134, 0.01, 1.0, 1.9643912000000001492, 1.1000000000000000021},
    {20, 0.01, 0.01, 0.001, 0.17022581362691099588, 0.20100000000000000418},
    {50, 0.01, 0.01, 0.01, 0.22459660262893472836, 0.51000000000000001062},
    {100, 0.01, 1e-09, 0.01, 0.32348542587702927664, 0.010000100000000000208},
    {1000, 0.5, 1e-09, 0.001, 558.76970001191999036, 0.0010010000000000000209},
    {10000, 0.001, 0.001, 1e-09, 0.66378980788680418516, 10.000000001000000208},
};

constexpr SubsampleRow kSubsampleRows[] = {
    {1.0, 1, 2, 3.0},
    {0.5, 1, 10, 0.3},
    {0.5, 10, 600, 0.05},
    {0.1, 3, 6, 0.30000000000000001665},
    {1.0, 50, 1000, 0.3},
    {0.25, 7, 100, 0.105},
    {0.0, 4, 9, 0.0},
    {0.9, 1, 1000000, 5.4000000000000001332e-6},
    {0.33, 12, 24, 0.99000000000000004663},
    {0.75, 100, 12345, 0.036452004860267314702},
};

// Calls f on every nondecreasing sequence of `size` values in [0, domain).
void ForEachMultiset(std::size_t size, std::size_t domain,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> db(size, 0);
  while (true) {
    f(db);
    std::size_t i = size;
    while (i > 0 && db[i - 1] == domain - 1) --i;
    if (i == 0) return;
    const std::size_t v = db[i - 1] + 1;
    for (std::size_t j = i - 1; j < size; ++j) db[j] = v;
  }
}

struct MedianCheck {
  std::uint64_t databases = 0;
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  double worst_ratio = 0.0;
  double worst_dist = 0.0;

  void Database(const std::vector<std::size_t>& db, std::size_t domain, double eps) {
    ++databases;
    const auto p = dp::PrivateMedianDistribution(db, domain, eps);
    const auto brute = testing_oracles::MedianDistributionBruteForce(db, domain, eps);
    for (std::size_t i = 0; i < domain; ++i) worst_dist = std::max(worst_dist, std::abs(p[i] - brute[i]));
    // Neighbors replace one row; rows holding equal values give equal neighbors.
    std::vector<std::size_t> nb = db;
    for (std::size_t i = 0; i < db.size(); ++i) {
      if (i > 0 && db[i] == db[i - 1]) continue;
      for (std::size_t v = 0; v < domain; ++v) {
        if (v == db[i]) continue;
        nb[i] = v;
        const double r = testing_oracles::MaxLogRatio(p, dp::PrivateMedianDistribution(nb, domain, eps));
        ++pairs;
        worst_ratio = std::max(worst_ratio, r);
        violations += r > eps + kRatioTol;
      }
      nb[i] = db[i];
    }
  }
};

Outcome Criterion1() {
  int bad_rows = 0;
  for (const auto& r : kCompositionRows) {
    const auto got = dp::AdvancedComposition(r.k, r.eps, r.delta, r.delta_prime);
    bad_rows += !Close(got.epsilon, r.want_eps) || !Close(got.delta, r.want_delta);
  }
  for (const auto& r : kSubsampleRows) bad_rows += !Close(dp::SubsampleEpsilon(r.eps, r.k, r.n), r.want);
  const int rows = std::size(kCompositionRows) + std::size(kSubsampleRows);

  constexpr double kEps = 0.5;
  MedianCheck check;
  const std::pair<std::size_t, std::size_t> exhaustive[] = {
      {1, 64}, {2, 64}, {3, 32}, {4, 16}, {5, 10}, {6, 8}, {8, 5}};
  for (const auto& [size, domain] : exhaustive) {
    ForEachMultiset(size, domain, [&](const auto& db) { check.Database(db, domain, kEps); });
  }
  Rng rng(101);
  for (int t = 0; t < 500; ++t) {
    std::vector<std::size_t> db(8);
    for (auto& v : db) v = UniformIndex(rng, 64);
    std::sort(db.begin(), db.end());
    check.Database(db, 64, kEps);
  }
  const bool pass = bad_rows == 0 && check.violations == 0 && check.worst_dist <= kDistTol;
  return {pass, Fmt("%d/%d formula rows within %.0e; median: %llu databases, %llu neighbor pairs, "
                    "worst log-ratio %.6f vs eps %.2f, %llu violations, max |lib - brute| %.1e",
                    rows - bad_rows, rows, kFormulaRelTol, (unsigned long long)check.databases,
                    (unsigned long long)check.pairs, check.worst_ratio, kEps,
                    (unsigned long long)check.violations, check.worst_dist)};
}

// ---- 2 ------------------------------------------------------------------

Outcome Criterion2() {
  struct Case {
    double bound, alpha, beta, eps;
    std::size_t size, spread;
  };
  const Case cases[] = {{100, 0.25, 0.05, 0.5, 500, 21},
                        {1e4, 0.1, 0.01, 0.5, 1000, 41},
                        {256, 0.1, 0.2, 1.0, 300, 11},
                        {2, 1.0, 0.2, 1.0, 20, 7}};
  bool pass = true;
  std::string detail;
  for (std::size_t c = 0; c < std::size(cases); ++c) {
    const auto& k = cases[c];
    const auto grid = dp::BuildGrid(k.bound, k.alpha);
    const auto cfg = dp::MakeMedianConfig(k.eps, k.beta, grid.size());
    Rng rng(DeriveSeed(202, c));
    int violations = 0;
    std::vector<double> sample(k.size);
    for (int t = 0; t < kRankTrials; ++t) {
      const auto centre = static_cast<long>(UniformIndex(rng, grid.size()));
      for (double& v : sample) {
        const long off = static_cast<long>(UniformIndex(rng, k.spread)) - static_cast<long>(k.spread / 2);
        v = grid[static_cast<std::size_t>(
            std::clamp<long>(centre + off, 0, static_cast<long>(grid.size()) - 1))];
      }
      const double x = dp::PrivateMedian(sample, grid, cfg, rng);
      violations += !testing_oracles::RankConditionBruteForce(sample, x, cfg.gamma);
    }
    const double freq = double(violations) / kRankTrials;
    const double limit = k.beta + 3 * std::sqrt(k.beta * (1 - k.beta) / kRankTrials);
    pass = pass && freq <= limit;
    detail += Fmt("%s[grid %zu, Gamma %llu, |S| %zu] %.4f <= %.4f", c ? "; " : "", grid.size(),
                  (unsigned long long)cfg.gamma, k.size, freq, limit);
  }
  return {pass, detail};
}

// ---- 3 ------------------------------------------------------------------

Outcome Criterion3() {
  int cases = 0, failures = 0;
  double worst = 0.0;
  for (std::uint64_t T : {1u, 10u, 50u, 100u, 1000u, 10000u}) {
    for (double U : {2.0, 64.0, 1e4, 1e6}) {
      for (double alpha : {0.01, 0.1, 0.5, 1.0}) {
        for (double delta : {1e-6, 0.01, 0.05, 0.5}) {
          const auto p = wrapper::DeriveParams(T, U, alpha, delta, wrapper::PaperConstants());
          // Recomputed from s, c and the definitions, not through the library.
          const double beta = delta / (2.0 * double(T));
          const double root = std::sqrt(2.0 * double(T) * std::log(100.0 / beta));
          const double e = 6.0 * double(p.s) / double(p.c) * p.eps_med;
          const double lhs = root * e + 2.0 * double(T) * e * e;
          ++cases;
          failures += !(lhs <= 0.01 + kBudgetTol) || p.eps_med != 0.5 || 2 * p.s > p.c;
          worst = std::max(worst, lhs);
        }
      }
    }
  }
  return {failures == 0, Fmt("%d paper-constant parameter sets, %d failures, max lhs %.6f <= 0.01",
                             cases, failures, worst)};
}

// ---- 4 ------------------------------------------------------------------

Outcome Criterion4() {
  const sparsify::SamplingConfig cfg;  // paper constants
  Rng build(404);
  std::vector<graph::Graph> sources = {graph::CompleteGraph(14), graph::RandomRegular(14, 6, build),
                                       graph::RandomRegular(12, 4, build),
                                       graph::TwoCliques(7, 1.0, 2)};
  struct Local {
    const sparsify::Piece* piece;
    graph::Graph g;
    std::vector<graph::Vertex> ids;
    std::size_t n_global;
  };
  std::vector<sparsify::ExpanderDecomposition> decomps;
  decomps.reserve(sources.size());
  std::vector<Local> pieces;
  for (const auto& g : sources) {
    decomps.push_back(sparsify::ExpanderDecomposition::Decompose(g, {.phi = cfg.phi}));
  }
  double p_min = 1.0;
  for (const auto& d : decomps) {
    for (const auto& [id, piece] : d.pieces()) {
      if (piece.num_vertices() < 3 || piece.certificate().kind == sparsify::CertificateKind::kTrivial) continue;
      Local l{&piece, {}, {}, d.graph().num_vertices()};
      l.g = piece.LocalGraph(&l.ids);
      for (const auto& [u, pv] : piece.vertices()) {
        p_min = std::min(p_min, sparsify::SamplingProb(cfg, l.n_global, pv.deg_tilde));
      }
      pieces.push_back(std::move(l));
    }
  }
  if (pieces.empty()) return {false, "no certified pieces"};
  int failures = 0;
  double worst = 1.0;
  Rng rng(405);
  for (int r = 0; r < kSparsifierResamples; ++r) {
    const Local& l = pieces[r % pieces.size()];
    graph::Graph h(l.g.num_vertices());
    auto local = [&](graph::Vertex x) {
      return static_cast<graph::Vertex>(std::lower_bound(l.ids.begin(), l.ids.end(), x) - l.ids.begin());
    };
    sparsify::SamplePiece(*l.piece, cfg, l.n_global, rng,
                          [&](graph::Vertex u, graph::Vertex v, double w) { h.AddEdge(local(u), local(v), w); });
    std::vector<std::pair<graph::Vertex, graph::Vertex>> all_pairs;
    for (graph::Vertex u = 0; u < l.g.num_vertices(); ++u) {
      for (graph::Vertex v = u + 1; v < l.g.num_vertices(); ++v) all_pairs.emplace_back(u, v);
    }
    sparsify::RatioRange range = sparsify::AllCutRatios(l.g, h);
    range.Merge(sparsify::QuadraticFormRatios(l.g, h, 100, rng));
    range.Merge(sparsify::ResistanceRatios(l.g, h, all_pairs));
    failures += !range.Within(cfg.epsilon);
    worst = std::max({worst, range.max, 1.0 / range.min});
  }
  const double rate = double(failures) / kSparsifierResamples;
  return {rate <= kSparsifierFailure,
          Fmt("%zu certified pieces, %d resamples, failure rate %.4f <= %.2f, worst ratio %.6f vs "
              "1+eps %.2f; smallest sampling probability %.3f (paper constants keep every edge at n <= 14)",
              pieces.size(), kSparsifierResamples, rate, kSparsifierFailure, worst, 1 + cfg.epsilon, p_min)};
}

// ---- 5 ------------------------------------------------------------------

double ChiSquareP(double stat, int dof) {
  if (dof <= 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), stat));
}

double LogBinomialPmf(std::uint64_t n, std::uint64_t k, double p) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(double(n - k) + 1.0) +
         double(k) * std::log(p) + double(n - k) * std::log1p(-p);
}

// Pearson statistic with bins of expectation below 5 pooled into one.
std::pair<double, int> Pearson(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0, pool_o = 0, pool_e = 0;
  int bins = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < 5) {
      pool_o += observed[i];
      pool_e += expected[i];
      continue;
    }
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    ++bins;
  }
  if (pool_e >= 5) {
    stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
    ++bins;
  }
  return {stat, bins - 1};
}

Outcome Criterion5() {
  struct Case {
    std::uint64_t n;
    double p;
  };
  const Case cases[] = {{1, 0.5},       {2, 0.3},      {3, 0.1},       {4, 0.5},       {5, 0.2},
                        {6, 0.7},       {8, 0.05},     {8, 0.5},       {10, 0.3},      {10, 0.9},
                        {100, 0.01},    {100, 0.5},    {1000, 0.001},  {1000, 0.05},   {1000, 0.3},
                        {10000, 5e-4},  {10000, 0.01}, {100000, 1e-4}, {100000, 0.005}, {1000000, 1e-5}};
  constexpr std::uint64_t kExactLimit = 10;
  constexpr int kTrials = 20000;
  constexpr int kBuckets = 10;
  double min_p = 1.0;
  double worst_touch = 0.0;
  int configs = 0;
  for (std::size_t c = 0; c < std::size(cases); ++c) {
    const auto [n, p] = cases[c];
    Rng rng(DeriveSeed(505, c));
    std::uint64_t touches = 0;
    std::vector<double> size_hist(n + 1, 0), subset_hist, bucket(kBuckets, 0);
    if (n <= kExactLimit) subset_hist.assign(std::size_t{1} << n, 0);
    for (int t = 0; t < kTrials; ++t) {
      const auto s = sparsify::SubsetSample(n, p, rng, &touches);
      size_hist[s.size()] += 1;
      if (n <= kExactLimit) {
        std::uint64_t mask = 0;
        for (auto i : s) mask |= std::uint64_t{1} << i;
        subset_hist[mask] += 1;
      } else {
        for (auto i : s) bucket[i * kBuckets / n] += 1;
      }
    }
    worst_touch = std::max(worst_touch, double(touches) / (kTrials * (p * double(n) + 1.0)));
    if (n <= kExactLimit) {
      // Every subset against its Bernoulli product probability.
      std::vector<double> expected(subset_hist.size());
      for (std::uint64_t m = 0; m < expected.size(); ++m) {
        const int k = std::popcount(m);
        expected[m] = kTrials * std::pow(p, k) * std::pow(1 - p, double(n) - k);
      }
      const auto [stat, dof] = Pearson(subset_hist, expected);
      min_p = std::min(min_p, ChiSquareP(stat, dof));
    } else {
      std::vector<double> expected(n + 1);
      for (std::uint64_t k = 0; k <= n; ++k) expected[k] = kTrials * std::exp(LogBinomialPmf(n, k, p));
      const auto [stat, dof] = Pearson(size_hist, expected);
      min_p = std::min(min_p, ChiSquareP(stat, dof));
      // Bucket counts are independent binomials under Bernoulli sampling.
      double bstat = 0;
      for (int b = 0; b < kBuckets; ++b) {
        const double width = double((b + 1) * n / kBuckets - b * n / kBuckets);
        const double mean = kTrials * width * p;
        bstat += (bucket[b] - mean) * (bucket[b] - mean) / (mean * (1 - p));
      }
      min_p = std::min(min_p, ChiSquareP(bstat, kBuckets));
    }
    ++configs;
  }
  const bool pass = min_p > kChiSquareFloor && worst_touch <= kTouchConstant;
  return {pass, Fmt("%d (N,p) configs x %d draws, min chi-square p %.4f > %.3f, touches/(pN+1) max %.4f <= C = %.1f",
                    configs, kTrials, min_p, kChiSquareFloor, worst_touch, kTouchConstant)};
}

// ---- 6 ------------------------------------------------------------------

Outcome Criterion6() {
  sparsify::SamplingConfig cfg;
  cfg.oversample = 8;
  Rng rng(606);
  std::vector<double> refresh, decompose;
  // 4950 is the edge count of K100, the densest simple graph on 100 vertices.
  for (std::size_t m : {1000u, 4950u}) {
    const auto g = graph::RandomGnm(100, m, rng);
    const auto d = sparsify::ExpanderDecomposition::Decompose(g, {.phi = 0.1});
    const auto first = sparsify::Sparsify(d, 10, cfg, Rng(DeriveSeed(607, m)));
    double total = 0;
    constexpr int kRefreshes = 20;
    for (int i = 0; i < kRefreshes; ++i) total += double(first.Refresh(Rng(DeriveSeed(608, m, i))).issue_work());
    refresh.push_back(total / kRefreshes);
    decompose.push_back(double(d.preprocess_work()));
  }
  const double spread = std::abs(refresh[0] - refresh[1]) / std::min(refresh[0], refresh[1]);
  const bool pass = spread < kRefreshSpread && refresh[0] < kRefreshOverDecompose * decompose[0] &&
                    refresh[1] < kRefreshOverDecompose * decompose[1];
  return {pass, Fmt("refresh %.0f (m=1000) vs %.0f (m=4950), spread %.3f < %.2f; refresh/decompose %.4f, %.4f < %.1f",
                    refresh[0], refresh[1], spread, kRefreshSpread, refresh[0] / decompose[0],
                    refresh[1] / decompose[1], kRefreshOverDecompose)};
}

// ---- 7, 8 ---------------------------------------------------------------

harness::AttackReport& MinCutAttack() {
  static harness::AttackReport rep = harness::RunMinCutAttack(harness::MinCutAttackConfig{}, 707);
  return rep;
}

Outcome Criterion7() {
  const auto& rep = MinCutAttack();
  const double target = harness::ThreeSigmaFloor(1.0 - rep.params.delta_fail, rep.wrapped_trials);
  const bool pass = rep.single_success_rate() >= kSingleSuccess && rep.wrapped_rate() >= target &&
                    rep.violations == 0;
  return {pass, Fmt("single copy broken in %llu/%llu trials (%.2f >= %.2f); wrapped all-steps accurate "
                    "in %llu/%llu (%.3f >= %.3f), min per-step accuracy %.3f; c = %llu copies, s = %llu",
                    (unsigned long long)rep.single_successes, (unsigned long long)rep.single_trials,
                    rep.single_success_rate(), kSingleSuccess, (unsigned long long)rep.wrapped_all_accurate,
                    (unsigned long long)rep.wrapped_trials, rep.wrapped_rate(), target,
                    rep.wrapped_min_accuracy, (unsigned long long)rep.params.c,
                    (unsigned long long)rep.params.s)};
}

Outcome Criterion8() {
  const auto& rep = MinCutAttack();
  const double target = harness::ThreeSigmaFloor(1.0 - rep.params.beta, rep.copy_steps);
  const bool pass = rep.copy_steps > 0 && rep.copy_good_rate() >= target;
  return {pass, Fmt("%llu measured steps, %llu with accurate-copy fraction < %.1f; rate %.5f >= %.5f; "
                    "min fraction %.3f",
                    (unsigned long long)rep.copy_steps, (unsigned long long)rep.copy_steps_below, kCopyLevel,
                    rep.copy_good_rate(), target, rep.copy_fraction_min)};
}

// ---- 9 ------------------------------------------------------------------

Outcome Criterion9() {
  harness::PipelineConfig complete;
  const auto a = harness::RunPipelineExperiment(complete, 909);
  harness::PipelineConfig regular;
  regular.cluster = "regular";
  regular.trials = 5;
  const auto b = harness::RunPipelineExperiment(regular, 910);
  const double target = harness::ThreeSigmaFloor(1.0 - a.params.delta_fail, a.trials);
  const double spread = std::abs(a.refresh_work - b.refresh_work) / std::min(a.refresh_work, b.refresh_work);
  const double per_handle_a = a.refresh_work / double(a.params.c);
  const double per_handle_b = b.refresh_work / double(b.params.c);
  const bool pass = a.rate() >= target && b.rate() >= harness::ThreeSigmaFloor(1.0 - b.params.delta_fail, b.trials) &&
                    a.violations == 0 && b.violations == 0 && a.phases_min >= complete.phases &&
                    spread < kRefreshSpread && per_handle_a < kRefreshOverDecompose * a.decompose_work &&
                    per_handle_b < kRefreshOverDecompose * b.decompose_work;
  return {pass, Fmt("complete clusters (60 vertices, m=%llu): %llu/%llu all-steps accurate (%.3f >= %.3f), "
                    ">= %llu phases; regular clusters (m=%llu): %llu/%llu; per-phase refresh %.0f vs %.0f, "
                    "spread %.3f < %.2f; per-handle refresh / decompose %.4f, %.4f < %.1f",
                    (unsigned long long)a.edges, (unsigned long long)a.all_accurate, (unsigned long long)a.trials,
                    a.rate(), target, (unsigned long long)a.phases_min, (unsigned long long)b.edges,
                    (unsigned long long)b.all_accurate, (unsigned long long)b.trials, a.refresh_work,
                    b.refresh_work, spread, kRefreshSpread, per_handle_a / a.decompose_work,
                    per_handle_b / b.decompose_work, kRefreshOverDecompose)};
}

// ---- 10 -----------------------------------------------------------------

Outcome Criterion10() {
  using namespace separation;
  bool pass = true;
  std::string detail;

  // Oblivious list-of-outputs.
  {
    constexpr unsigned n = 12;
    constexpr std::uint64_t P = 48, steps = 100;
    int exact = 0, clean = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CostedOracle oracle(seed);
      const HFunction h(n, P, oracle);
      IncrementalLob alg(h);
      const auto rep = RunLob(alg, oracle, seed, h, 1, steps, LobAdversary::kOblivious, seed);
      const std::uint64_t formula = IntPow(n, 1) * P + steps * P;
      exact += !rep.violation && rep.total_reads() == formula + rep.restarts * n * P;
      clean += !rep.violation && rep.restarts == 0 && rep.total_reads() == formula;
    }
    pass = pass && exact == 10 && clean > 0;
    detail += Fmt("oblivious n^c P + steps P: %d/10 exact counting restarts, %d/10 with no restart", exact, clean);
  }
  // Honest algorithm against the adaptive adversary.
  {
    constexpr unsigned n = 10;
    constexpr std::uint64_t P = 40;
    CostedOracle oracle(1010);
    const HFunction h(n, P, oracle);
    IncrementalLob alg(h);
    const auto rep = RunLob(alg, oracle, 1010, h, 1, 2 * n, LobAdversary::kAdaptive, 1010);
    const double formula = double(n * n * P);
    bool ok = !rep.violation && rep.blocks() == 2;
    for (std::uint64_t b = 0; ok && b < 2; ++b) ok = rep.block_reads(b) >= formula * (1 - rep.block_slack(b));
    pass = pass && ok;
    detail += Fmt("; adaptive blocks %llu, %llu >= %.0f x (1 - slack %.2f, %.2f)",
                  (unsigned long long)rep.block_reads(0), (unsigned long long)rep.block_reads(1), formula,
                  rep.block_slack(0), rep.block_slack(1));
  }
  // Boxes.
  {
    constexpr std::uint64_t kChain = 37;
    CostedOracle oracle(1011);
    BoxesScheme scheme(20, kChain, oracle);
    Rng rng(1012);
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t x = UniformIndex(rng, 1u << 20);
      const Box b = scheme.Enc(x, rng);
      const std::uint64_t before = oracle.reads();
      ok += scheme.Dec(b) == x && oracle.reads() - before == kChain;
    }
    pass = pass && ok == 100;
    detail += Fmt("; boxes roundtrip %d/100 at exactly %llu reads", ok, (unsigned long long)kChain);
  }
  {
    constexpr double kAlpha = 0.1, kBeta = 0.05;
    constexpr std::uint64_t kChain = 10, kEll = 50;
    const auto rep = RunAverageOfBoxes(16, 2000, kChain, kEll, kAlpha, kBeta, 200, 1013);
    const std::uint64_t w = OpenCount(kAlpha, kBeta, kEll);
    const bool counts = rep.counters_match && rep.opened == w &&
                        rep.oracle_reads + rep.query_units == w * kChain + kEll * w;
    pass = pass && counts && rep.within_rate() >= 1 - kBeta;
    detail += Fmt("; average-of-boxes w = %llu, reads + query units %llu = w T + l w, (alpha, beta) "
                  "met in %.3f >= %.2f of 200 trials",
                  (unsigned long long)w, (unsigned long long)(rep.oracle_reads + rep.query_units),
                  rep.within_rate(), 1 - kBeta);
  }
  return {pass, detail};
}

// ---- 11 -----------------------------------------------------------------

std::string EveryExperiment(std::uint64_t seed) {
  std::ostringstream out;
  auto sink = [&](const harness::GameResult& r, const harness::Json& tags) { harness::WriteJsonl(out, r, tags); };
  harness::MinCutAttackConfig mincut;
  mincut.steps = 120;
  mincut.single_trials = 3;
  mincut.wrapped_trials = 1;
  out << harness::RunMinCutAttack(mincut, seed, sink).ToJson().dump() << '\n';
  harness::SumAttackConfig sum;
  sum.single_trials = 3;
  sum.wrapped_trials = 2;
  sum.steps = 120;
  out << harness::RunSumAttack(sum, seed, sink).ToJson().dump() << '\n';
  harness::LandmarkConfig landmark;
  landmark.trials = 2;
  landmark.steps = 200;
  out << harness::RunLandmarkExperiment(landmark, seed, sink).ToJson().dump() << '\n';
  harness::PipelineConfig pipeline;
  pipeline.trials = 1;
  pipeline.phases = 2;
  out << harness::RunPipelineExperiment(pipeline, seed, sink).ToJson().dump() << '\n';
  {
    using namespace separation;
    CostedOracle oracle(seed);
    const HFunction h(10, 20, oracle);
    IncrementalLob alg(h);
    const auto rep = RunLob(alg, oracle, seed, h, 1, 30, LobAdversary::kAdaptive, seed);
    out << rep.total_reads() << ' ' << rep.restarts << ' ' << rep.excluded_size;
    for (bool b : rep.inserted_repeat) out << b;
    const auto boxes = RunAverageOfBoxes(12, 500, 4, 20, 0.1, 0.05, 20, seed);
    out << ' ' << boxes.max_error << ' ' << boxes.trials_all_within << ' ' << boxes.oracle_reads << '\n';
  }
  return out.str();
}

Outcome Criterion11() {
  const auto a = EveryExperiment(1111);
  const auto b = EveryExperiment(1111);
  const auto other = EveryExperiment(1112);
  const bool pass = a == b && a != other;
  return {pass, Fmt("%zu bytes of transcripts and reports replayed %s; another master seed %s",
                    a.size(), a == b ? "bit-identically" : "with differences",
                    a != other ? "differs" : "is identical")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"dp-core exactness", Criterion1},
      {"private-median rank guarantee", Criterion2},
      {"composition budget", Criterion3},
      {"sparsifier quality", Criterion4},
      {"subset sampling", Criterion5},
      {"refresh speed", Criterion6},
      {"attack/defense separation", Criterion7},
      {"mostly-accurate copies", Criterion8},
      {"blinking pipeline", Criterion9},
      {"separation-lab identities", Criterion10},
      {"determinism", Criterion11}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("CRITERION %d %s: %s: %s (%.1f s)\n", number, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
