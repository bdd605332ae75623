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
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "robustdyn/dp/grid.hpp"
#include "robustdyn/dp/laplace.hpp"
#include "robustdyn/dp/median.hpp"
#include "robustdyn/dp/privacy.hpp"
#include "oracles.hpp"

namespace robustdyn::dp {
namespace {

TEST(LaplaceTest, MomentsMatchClosedForm) {
  Rng rng(17);
  constexpr int kDraws = 1'000'000;
  double sum = 0.0, sum_sq = 0.0;
  int inside = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = LaplaceSample(1.0, rng);
    sum += x;
    sum_sq += x * x;
    if (std::abs(x) <= std::log(2.0)) ++inside;
  }
  const double mean = sum / kDraws;
  const double var = sum_sq / kDraws - mean * mean;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(var, 2.0, 0.1);
  // Pr[|X| <= ln 2] = 1 - exp(-ln 2) = 1/2.
  EXPECT_NEAR(static_cast<double>(inside) / kDraws, 0.5, 0.01);
}

TEST(LaplaceTest, SeededStreamIsDeterministic) {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(LaplaceSample(2.5, a), LaplaceSample(2.5, b));
  }
}

TEST(LaplaceTest, RejectsNonPositiveScale) {
  Rng rng(1);
  EXPECT_THROW(LaplaceSample(0.0, rng), InvalidArgument);
  EXPECT_THROW(LaplaceSample(-1.0, rng), InvalidArgument);
}

TEST(CompositionTest, SubstitutedValues) {
  const double e2 = std::exp(-2.0);
  const auto one = AdvancedComposition(1, 0.1, 0.0, e2);
  EXPECT_NEAR(one.epsilon, 0.22, 1e-12);
  EXPECT_NEAR(one.delta, e2, 1e-15);

  // sqrt(2*2*2) * 0.5 + 2*2*0.25 = sqrt(2) + 1.
  const auto two = AdvancedComposition(2, 0.5, 0.01, e2);
  EXPECT_NEAR(two.epsilon, std::sqrt(2.0) + 1.0, 1e-12);
  EXPECT_NEAR(two.delta, e2 + 0.02, 1e-15);
}

TEST(CompositionTest, ZeroEpsilonComposesToZero) {
  for (std::uint64_t k : {1u, 10u, 1000u}) {
    EXPECT_EQ(AdvancedComposition(k, 0.0, 0.0, 0.5).epsilon, 0.0);
  }
}

TEST(CompositionTest, RejectsOutOfRange) {
  EXPECT_THROW(AdvancedComposition(0, 0.1, 0.0, 0.1), InvalidArgument);
  EXPECT_THROW(AdvancedComposition(1, 1.5, 0.0, 0.1), InvalidArgument);
  EXPECT_THROW(AdvancedComposition(1, 0.1, 2.0, 0.1), InvalidArgument);
  EXPECT_THROW(AdvancedComposition(1, 0.1, 0.0, 0.0), InvalidArgument);
}

TEST(SubsampleTest, SubstitutedValues) {
  EXPECT_DOUBLE_EQ(SubsampleEpsilon(1.0, 1, 6), 1.0);
  EXPECT_DOUBLE_EQ(SubsampleEpsilon(0.0, 3, 10), 0.0);
  EXPECT_NEAR(SubsampleEpsilon(0.5, 10, 600), 0.05, 1e-15);
  EXPECT_THROW(SubsampleEpsilon(0.5, 4, 7), InvalidArgument);
  EXPECT_THROW(SubsampleEpsilon(1.5, 1, 10), InvalidArgument);
}

TEST(GridTest, SmallGridsEnumerateDefinition) {
  const auto g = BuildGrid(2.0, 1.0);
  const std::vector<double> expected{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  ASSERT_EQ(g.points().size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_DOUBLE_EQ(g[i], expected[i]);
  }
  const auto h = BuildGrid(1.5, 1.0);
  EXPECT_EQ(h.max_exponent(), 1);
  EXPECT_EQ(h.size(), 7u);
}

TEST(GridTest, SortedSymmetricAndSized) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const double bound = 1.0 + 1e4 * UniformOpen01(rng);
    const double alpha = 0.01 + 0.99 * UniformOpen01(rng);
    const auto g = BuildGrid(bound, alpha);
    const auto& p = g.points();
    ASSERT_TRUE(std::is_sorted(p.begin(), p.end()));
    ASSERT_TRUE(std::adjacent_find(p.begin(), p.end()) == p.end());
    ASSERT_EQ(p[g.zero_index()], 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_DOUBLE_EQ(p[i], -p[p.size() - 1 - i]);
    }
    const int a = static_cast<int>(std::ceil(std::log(bound) / std::log1p(alpha) - 1e-9));
    ASSERT_EQ(p.size(), static_cast<std::size_t>(4 * a + 3));
    ASSERT_GE(g.extreme(), bound * (1 - 1e-12));
  }
}

TEST(GridTest, RejectsBadParameters) {
  EXPECT_THROW(BuildGrid(1.0, 0.5), InvalidArgument);
  EXPECT_THROW(BuildGrid(10.0, 0.0), InvalidArgument);
  EXPECT_THROW(BuildGrid(10.0, 1.5), InvalidArgument);
}

TEST(RoundTest, Examples) {
  const auto g = BuildGrid(2.0, 1.0);
  EXPECT_EQ(RoundToGrid(0.0, g).value, 0.0);
  EXPECT_EQ(RoundToGrid(0.6, g).value, 1.0);
  EXPECT_EQ(RoundToGrid(-0.6, g).value, -1.0);
  EXPECT_EQ(RoundToGrid(1.0, g).value, 1.0);
  const auto clamped = RoundToGrid(5.0, g);
  EXPECT_TRUE(clamped.clamped);
  EXPECT_EQ(clamped.value, 2.0);
}

TEST(RoundTest, RatioWithinOnePlusAlpha) {
  Rng rng(8);
  const auto g = BuildGrid(1000.0, 0.1);
  for (int i = 0; i < 10000; ++i) {
    const double mag = std::exp(std::log(1.0 / 1000.0) +
                                UniformOpen01(rng) * 2 * std::log(1000.0));
    const double v = (i % 2 == 0) ? mag : -mag;
    const auto r = RoundToGrid(v, g);
    ASSERT_FALSE(r.clamped);
    const double ratio = r.value / v;
    ASSERT_GE(ratio, 1.0 - 1e-12);
    ASSERT_LE(ratio, 1.1 + 1e-12);
  }
}

TEST(MedianTest, UnanimousSampleReturnsValue) {
  const auto grid = BuildGrid(8.0, 1.0);
  const auto cfg = MakeMedianConfig(0.5, 0.01, grid.size());
  const std::vector<double> sample(2 * cfg.gamma + 50, 1.0);
  Rng rng(3);
  int hits = 0;
  constexpr int kTrials = 2000;
  for (int i = 0; i < kTrials; ++i) {
    if (PrivateMedian(sample, grid, cfg, rng) == 1.0) ++hits;
  }
  EXPECT_GE(static_cast<double>(hits) / kTrials, 1.0 - cfg.beta);
}

TEST(MedianTest, RankGuaranteeMonteCarlo) {
  const auto grid = BuildGrid(100.0, 0.25);
  const auto cfg = MakeMedianConfig(0.5, 0.05, grid.size());
  Rng rng(11);
  constexpr int kTrials = 10000;
  constexpr int kSize = 500;
  int violations = 0;
  std::vector<double> sample(kSize);
  for (int t = 0; t < kTrials; ++t) {
    // Skewed samples so the median moves around the grid.
    const std::size_t centre = UniformIndex(rng, grid.size());
    for (double& v : sample) {
      const auto off = static_cast<long>(UniformIndex(rng, 21)) - 10;
      const long idx = std::clamp<long>(static_cast<long>(centre) + off, 0,
                                        static_cast<long>(grid.size()) - 1);
      v = grid[static_cast<std::size_t>(idx)];
    }
    const double x = PrivateMedian(sample, grid, cfg, rng);
    if (!testing_oracles::RankConditionBruteForce(sample, x, cfg.gamma)) ++violations;
  }
  const double beta = cfg.beta;
  const double sigma = std::sqrt(beta * (1 - beta) / kTrials);
  EXPECT_LE(static_cast<double>(violations) / kTrials, beta + 3 * sigma);
}

TEST(MedianTest, DistributionMatchesBruteForceAndRatioBound) {
  const auto grid = BuildGrid(2.0, 1.0);  // 7 points
  const double eps = 0.5;
  std::vector<std::size_t> db(4, 0);
  double worst = 0.0;
  // Every database of size 4 over the grid and every single-row change.
  const std::size_t g = grid.size();
  for (std::size_t code = 0; code < g * g * g * g; ++code) {
    std::size_t c = code;
    for (auto& x : db) { x = c % g; c /= g; }
    const auto p = PrivateMedianDistribution(db, g, eps);
    const auto oracle = testing_oracles::MedianDistributionBruteForce(db, g, eps);
    for (std::size_t i = 0; i < g; ++i) ASSERT_NEAR(p[i], oracle[i], 1e-12);
    for (std::size_t row = 0; row < db.size(); ++row) {
      auto other = db;
      for (std::size_t v = 0; v < g; ++v) {
        if (v == db[row]) continue;
        other[row] = v;
        const auto q = testing_oracles::MedianDistributionBruteForce(other, g, eps);
        worst = std::max(worst, testing_oracles::MaxLogRatio(oracle, q));
      }
    }
  }
  EXPECT_LE(worst, eps + 1e-12);
  EXPECT_GT(worst, 0.0);
}

TEST(MedianTest, RejectsOffGridAndEmpty) {
  const auto grid = BuildGrid(2.0, 1.0);
  const auto cfg = MakeMedianConfig(0.5, 0.1, grid.size());
  Rng rng(1);
  const std::vector<double> off{1.0, 0.7};
  EXPECT_THROW(PrivateMedian(off, grid, cfg, rng), InvalidArgument);
  const std::vector<double> empty;
  EXPECT_THROW(PrivateMedian(empty, grid, cfg, rng), InvalidArgument);
}

TEST(MedianTest, GammaFormula) {
  // |X| = 7, beta = 5e-5: ceil(4 ln(140000)) = 48.
  const auto cfg = MakeMedianConfig(0.5, 5e-5, 7);
  EXPECT_EQ(cfg.gamma, 48u);
}

// A DP-selected threshold predicate generalizes from the sample to the
// source distribution.
TEST(GeneralizationTest, DpSelectedPredicateGeneralizes) {
  constexpr double kEps = 0.05;
  constexpr double kDelta = 1e-4;
  const auto t = static_cast<std::size_t>(
      std::ceil(std::log(2 * kEps / kDelta) / (kEps * kEps)));
  constexpr std::size_t kUniverse = 20;
  std::vector<double> mu(kUniverse);
  for (std::size_t i = 0; i < kUniverse; ++i) mu[i] = 1.0 + static_cast<double>(i % 5);
  const double mass = std::accumulate(mu.begin(), mu.end(), 0.0);
  for (double& m : mu) m /= mass;

  Rng rng(23);
  constexpr int kTrials = 300;
  int close = 0;
  std::vector<std::size_t> sample(t);
  for (int trial = 0; trial < kTrials; ++trial) {
    for (auto& x : sample) x = SampleCategorical(mu, rng);
    // Candidates h_theta(x) = [x <= theta]; score favours a sample frequency
    // near 1/2 with sensitivity 1 in counts.
    std::vector<double> scores(kUniverse);
    for (std::size_t theta = 0; theta < kUniverse; ++theta) {
      double count = 0;
      for (auto x : sample) count += (x <= theta) ? 1 : 0;
      scores[theta] = -std::abs(count - static_cast<double>(t) / 2);
    }
    const std::size_t theta = ExponentialMechanism(scores, kEps, 1.0, rng);
    double hs = 0, hd = 0;
    for (auto x : sample) hs += (x <= theta) ? 1 : 0;
    hs /= static_cast<double>(t);
    for (std::size_t x = 0; x <= theta; ++x) hd += mu[x];
    if (std::abs(hs - hd) <= 10 * kEps) ++close;
  }
  EXPECT_GE(static_cast<double>(close) / kTrials, 1.0 - kDelta / kEps);
}

}  // namespace
}  // namespace robustdyn::dp
