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

// Boxes built from an oracle chain, and the sampling mechanism that answers
// statistical queries about their contents.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/separation/oracle.hpp"

namespace robustdyn::separation {

// (p, k_p xor x) with k_p = R^T(p).
struct Box {
  std::uint64_t p = 0;
  std::uint64_t masked = 0;

  friend bool operator==(const Box&, const Box&) = default;
};

// R maps n-bit words to n-bit words; one application is one oracle read.
class BoxesScheme {
 public:
  BoxesScheme(unsigned n, std::uint64_t chain, CostedOracle& oracle)
      : n_(n), chain_(chain), oracle_(&oracle) {
    internal::Require(n >= 1 && n <= 63, "n must lie in [1,63]");
    internal::Require(chain >= 1, "chain length must be positive");
  }

  unsigned n() const { return n_; }
  std::uint64_t chain() const { return chain_; }
  std::uint64_t mask() const { return (std::uint64_t{1} << n_) - 1; }

  Box Enc(std::uint64_t x, Rng& rng) {
    internal::Require(x <= mask(), "plaintext wider than n bits");
    const std::uint64_t p = UniformIndex(rng, mask() + 1);
    return {p, Key(p) ^ x};
  }

  // Exactly chain() oracle reads.
  std::uint64_t Dec(const Box& b) {
    if (b.p > mask() || b.masked > mask()) throw DecodeError("box wider than n bits");
    return Key(b.p) ^ b.masked;
  }

 private:
  std::uint64_t Key(std::uint64_t p) {
    for (std::uint64_t i = 0; i < chain_; ++i) p = oracle_->ReadBlock(p, n_);
    return p;
  }

  unsigned n_;
  std::uint64_t chain_;
  CostedOracle* oracle_;
};

using Predicate = std::function<bool(std::uint64_t)>;

// q(S): the mean of q over S.
inline double EmpiricalMean(const Predicate& q, const std::vector<std::uint64_t>& s) {
  if (s.empty()) return 0.0;
  std::uint64_t hits = 0;
  for (auto x : s) hits += q(x);
  return double(hits) / double(s.size());
}

// Hoeffding with a union bound over ell two-sided queries.
inline std::uint64_t OpenCount(double alpha, double beta, std::uint64_t ell) {
  internal::Require(alpha > 0 && beta > 0 && beta < 1 && ell >= 1, "need alpha > 0, beta in (0,1)");
  return static_cast<std::uint64_t>(std::ceil(std::log(2.0 * double(ell) / beta) / (2 * alpha * alpha)));
}

// Opens min(m, OpenCount) boxes chosen without replacement, once, and
// answers each query by its mean over the opened plaintexts. Evaluating a
// query on one plaintext is one query unit.
class ObliviousBoxesMechanism {
 public:
  ObliviousBoxesMechanism(BoxesScheme& scheme, const std::vector<Box>& boxes, double alpha,
                          double beta, std::uint64_t ell, Rng& rng) {
    const std::uint64_t w = std::min<std::uint64_t>(boxes.size(), OpenCount(alpha, beta, ell));
    std::vector<std::size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::uint64_t i = 0; i < w; ++i) {
      std::swap(order[i], order[i + UniformIndex(rng, order.size() - i)]);
      opened_.push_back(scheme.Dec(boxes[order[i]]));
    }
  }

  std::uint64_t opened() const { return opened_.size(); }
  std::uint64_t query_units() const { return query_units_; }

  double Answer(const Predicate& q) {
    query_units_ += opened_.size();
    return EmpiricalMean(q, opened_);
  }

 private:
  std::vector<std::uint64_t> opened_;
  std::uint64_t query_units_ = 0;
};

// A fixed oblivious query stream over n-bit plaintexts: alternating
// threshold queries x < t and subcube queries fixing two random bits.
inline std::vector<Predicate> ObliviousQueries(unsigned n, std::uint64_t ell, Rng& rng) {
  std::vector<Predicate> qs;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < ell; ++i) {
    if (i % 2 == 0) {
      const std::uint64_t t = UniformIndex(rng, size + 1);
      qs.push_back([t](std::uint64_t x) { return x < t; });
    } else {
      const auto a = UniformIndex(rng, n);
      auto b = UniformIndex(rng, n);
      if (n > 1) while (b == a) b = UniformIndex(rng, n);
      const std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
      const std::uint64_t pattern = rng() & mask;
      qs.push_back([mask, pattern](std::uint64_t x) { return (x & mask) == pattern; });
    }
  }
  return qs;
}

struct BoxesReport {
  std::uint64_t m = 0;
  std::uint64_t ell = 0;
  std::uint64_t chain = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t opened = 0;        // per trial
  std::uint64_t oracle_reads = 0;  // per trial, mechanism only
  std::uint64_t query_units = 0;   // per trial
  std::uint64_t trials_all_within = 0;
  double max_error = 0.0;
  bool counters_match = true;  // reads == w*T and units == ell*w in every trial

  double within_rate() const { return trials ? double(trials_all_within) / double(trials) : 1.0; }
};

// Each trial deals m plaintexts drawn uniformly from a fixed support of
// `support` n-bit strings, boxes them, runs the mechanism on a fresh oblivious
// query stream and compares every answer with the exact mean over all m.
inline BoxesReport RunAverageOfBoxes(unsigned n, std::uint64_t m, std::uint64_t chain,
                                     std::uint64_t ell, double alpha, double beta,
                                     std::uint64_t trials, std::uint64_t seed,
                                     std::uint64_t support = 64) {
  BoxesReport rep{m, ell, chain, alpha, beta, trials};
  Rng fixed(DeriveSeed(seed, 0));
  std::vector<std::uint64_t> points(support);
  for (auto& p : points) p = UniformIndex(fixed, std::uint64_t{1} << n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(DeriveSeed(seed, 1, t));
    const std::uint64_t oracle_seed = DeriveSeed(seed, 2, t);
    CostedOracle dealer_oracle(oracle_seed);
    BoxesScheme dealer(n, chain, dealer_oracle);
    std::vector<std::uint64_t> plain(m);
    std::vector<Box> boxes;
    for (auto& x : plain) {
      x = points[UniformIndex(rng, points.size())];
      boxes.push_back(dealer.Enc(x, rng));
    }
    const auto queries = ObliviousQueries(n, ell, rng);

    CostedOracle oracle(oracle_seed);
    BoxesScheme scheme(n, chain, oracle);
    ObliviousBoxesMechanism mech(scheme, boxes, alpha, beta, ell, rng);
    bool within = true;
    for (const auto& q : queries) {
      const double err = std::abs(mech.Answer(q) - EmpiricalMean(q, plain));
      rep.max_error = std::max(rep.max_error, err);
      within = within && err <= alpha;
    }
    rep.trials_all_within += within;
    rep.opened = mech.opened();
    rep.oracle_reads = oracle.reads();
    rep.query_units = mech.query_units();
    rep.counters_match = rep.counters_match && oracle.reads() == mech.opened() * chain &&
                         mech.query_units() == ell * mech.opened();
  }
  return rep;
}

}  // namespace robustdyn::separation
