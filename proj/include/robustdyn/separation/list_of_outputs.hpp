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

// The list-of-outputs search problem: keep an x outside the excluded set X
// together with H(x o y) for every y in the list Y.
#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "robustdyn/common/errors.hpp"
#include "robustdyn/common/random.hpp"
#include "robustdyn/separation/oracle.hpp"

namespace robustdyn::separation {

inline std::uint64_t IntPow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

// One update adds `excluded` to X and replaces the oldest element of Y by
// `inserted`.
struct LobUpdate {
  std::uint64_t excluded = 0;
  std::uint64_t inserted = 0;
};

struct LobOutput {
  std::uint64_t x = 0;
  std::vector<std::uint64_t> values;  // H(x o y) in list order
};

class LobState {
 public:
  // Y starts as n^c uniform strings and X empty.
  LobState(unsigned n, unsigned c, Rng& rng) : n_(n), c_(c) {
    internal::Require(n >= 2 && n <= kMaxHashBits, "n must lie in [2,16]");
    internal::Require(c >= 1 && IntPow(n, c) <= (std::uint64_t{1} << n), "n^c must fit in 2^n");
    for (std::uint64_t i = 0; i < IntPow(n, c); ++i) y_.push_back(UniformIndex(rng, universe()));
  }

  unsigned n() const { return n_; }
  unsigned c() const { return c_; }
  std::uint64_t universe() const { return std::uint64_t{1} << n_; }
  std::uint64_t list_size() const { return y_.size(); }
  // The problem asks |X| < 2^{n/2}. At desk scale a run may pass it; runs
  // report whether they stayed inside rather than refusing to continue.
  std::uint64_t excluded_limit() const {
    return static_cast<std::uint64_t>(std::floor(std::exp2(0.5 * n_)));
  }
  const std::set<std::uint64_t>& excluded() const { return x_; }
  const std::deque<std::uint64_t>& list() const { return y_; }

  void Apply(const LobUpdate& up) {
    if (up.excluded >= universe() || up.inserted >= universe()) {
      throw InvalidUpdate("update wider than n bits");
    }
    x_.insert(up.excluded);
    y_.pop_front();
    y_.push_back(up.inserted);
  }

  // Uniform element of {0,1}^n outside X.
  std::uint64_t SampleAllowed(Rng& rng) const {
    for (;;) {
      const auto x = UniformIndex(rng, universe());
      if (!x_.count(x)) return x;
    }
  }

 private:
  unsigned n_;
  unsigned c_;
  std::set<std::uint64_t> x_;
  std::deque<std::uint64_t> y_;
};

class LobAlgorithm {
 public:
  virtual ~LobAlgorithm() = default;

  virtual std::string name() const = 0;
  // Preprocessing; returns the first output.
  virtual LobOutput Init(const LobState& s, Rng rng) = 0;
  // Called after `up` has been applied to `s`.
  virtual LobOutput Update(const LobState& s, const LobUpdate& up) = 0;
  // H evaluations actually computed, cache hits excluded.
  virtual std::uint64_t evaluations() const = 0;
  // Times the current x was excluded and everything had to be recomputed.
  virtual std::uint64_t restarts() const { return 0; }
};

// Keeps one random x and recomputes only the value for the inserted y. When
// x itself gets excluded it draws a new x and recomputes the whole list.
class IncrementalLob final : public LobAlgorithm {
 public:
  explicit IncrementalLob(HFunction h) : h_(h) {}

  std::string name() const override { return "incremental"; }
  std::uint64_t evaluations() const override { return evals_; }
  std::uint64_t restarts() const override { return restarts_; }

  LobOutput Init(const LobState& s, Rng rng) override {
    rng_ = std::move(rng);
    Recompute(s);
    return out_;
  }

  LobOutput Update(const LobState& s, const LobUpdate& up) override {
    if (s.excluded().count(out_.x)) {
      ++restarts_;
      Recompute(s);
      return out_;
    }
    out_.values.erase(out_.values.begin());
    out_.values.push_back(Eval(out_.x, up.inserted));
    return out_;
  }

 private:
  std::uint64_t Eval(std::uint64_t x, std::uint64_t y) {
    ++evals_;
    return h_(x, y);
  }

  void Recompute(const LobState& s) {
    out_.x = s.SampleAllowed(rng_);
    out_.values.clear();
    for (auto y : s.list()) out_.values.push_back(Eval(out_.x, y));
  }

  HFunction h_;
  Rng rng_;
  LobOutput out_;
  std::uint64_t evals_ = 0;
  std::uint64_t restarts_ = 0;
};

// Memoizes every evaluation. Preprocessing spends `budget` evaluations
// covering the initial list for as many candidate x as fit. Each step it
// answers with the allowed candidate that has the most cached values for the
// current list, computing only the missing ones.
class CachingLob final : public LobAlgorithm {
 public:
  CachingLob(HFunction h, std::uint64_t budget) : h_(h), budget_(budget) {}

  std::string name() const override { return "cache-everything"; }
  std::uint64_t evaluations() const override { return evals_; }
  std::uint64_t restarts() const override { return restarts_; }
  std::uint64_t cache_size() const { return cache_.size(); }

  LobOutput Init(const LobState& s, Rng rng) override {
    rng_ = std::move(rng);
    std::uint64_t spent = 0;
    while (spent + s.list_size() <= budget_) {
      const auto x = s.SampleAllowed(rng_);
      if (candidates_.insert(x).second) {
        for (auto y : s.list()) Eval(x, y);
        spent += s.list_size();
      }
    }
    return Answer(s);
  }

  LobOutput Update(const LobState& s, const LobUpdate&) override {
    if (s.excluded().count(x_)) ++restarts_;
    return Answer(s);
  }

 private:
  std::uint64_t Eval(std::uint64_t x, std::uint64_t y) {
    const auto it = cache_.find({x, y});
    if (it != cache_.end()) return it->second;
    ++evals_;
    return cache_[{x, y}] = h_(x, y);
  }

  LobOutput Answer(const LobState& s) {
    std::optional<std::uint64_t> best;
    std::uint64_t best_hits = 0;
    for (auto x : candidates_) {
      if (s.excluded().count(x)) continue;
      std::uint64_t hits = 0;
      for (auto y : s.list()) hits += cache_.count({x, y});
      if (!best || hits > best_hits) {
        best = x;
        best_hits = hits;
      }
    }
    if (!best) {
      best = s.SampleAllowed(rng_);
      candidates_.insert(*best);
    }
    x_ = *best;
    LobOutput out{x_, {}};
    for (auto y : s.list()) out.values.push_back(Eval(x_, y));
    return out;
  }

  HFunction h_;
  std::uint64_t budget_;
  Rng rng_;
  std::set<std::uint64_t> candidates_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cache_;
  std::uint64_t x_ = 0;
  std::uint64_t evals_ = 0;
  std::uint64_t restarts_ = 0;
};

struct LobReport {
  std::string algorithm;
  std::string adversary;
  unsigned n = 0;
  unsigned c = 0;
  std::uint64_t cost = 0;  // P
  std::uint64_t list_size = 0;
  std::uint64_t preprocess_reads = 0;
  std::vector<std::uint64_t> update_reads;
  std::uint64_t restarts = 0;
  std::uint64_t initial_duplicates = 0;    // repeated strings in the initial Y
  std::vector<bool> inserted_repeat;       // update i inserted a y seen before
  std::uint64_t excluded_size = 0;
  std::uint64_t excluded_limit = 0;
  std::optional<std::string> violation;

  std::uint64_t steps() const { return update_reads.size(); }
  std::uint64_t total_reads() const {
    std::uint64_t t = preprocess_reads;
    for (auto r : update_reads) t += r;
    return t;
  }
  // Reads over updates [b * n^c, (b+1) * n^c).
  std::uint64_t block_reads(std::uint64_t b) const {
    std::uint64_t t = 0;
    for (std::uint64_t i = b * list_size; i < (b + 1) * list_size && i < steps(); ++i) {
      t += update_reads[i];
    }
    return t;
  }
  std::uint64_t blocks() const { return steps() / list_size; }
  bool excluded_within_limit() const { return excluded_size < excluded_limit; }
  double amortized() const { return steps() ? double(total_reads()) / double(steps()) : 0.0; }
  // Fraction of block b's n^{2c} evaluations that earlier work could have
  // covered. Only a y equal to one seen before lets an old evaluation be
  // reused, and such a y saves at most one evaluation per update while it is
  // in Y, so it can matter only in its own block and the next.
  double block_slack(std::uint64_t b) const {
    std::uint64_t hits = b == 0 ? initial_duplicates : 0;
    const std::uint64_t lo = b == 0 ? 0 : (b - 1) * list_size;
    for (std::uint64_t i = lo; i < (b + 1) * list_size && i < inserted_repeat.size(); ++i) {
      hits += inserted_repeat[i];
    }
    return std::min(1.0, double(hits) / double(list_size));
  }
};

enum class LobAdversary { kOblivious, kAdaptive };

// Runs `steps` updates. The oblivious adversary fixes its script up front:
// uniform excluded strings and uniform inserted strings. The adaptive one
// excludes the algorithm's previous x and inserts a uniform string. Every
// output is checked by a referee holding its own copy of the oracle, so the
// algorithm's counter only sees the algorithm's reads. An illegal or wrong
// output aborts the run.
inline LobReport RunLob(LobAlgorithm& alg, CostedOracle& oracle, std::uint64_t oracle_seed,
                        const HFunction& h, unsigned c, std::uint64_t steps, LobAdversary adversary,
                        std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, 0));
  LobState s(h.n(), c, rng);
  CostedOracle referee_oracle(oracle_seed);
  const HFunction referee(h.n(), h.cost(), referee_oracle);

  LobReport rep;
  rep.algorithm = alg.name();
  rep.adversary = adversary == LobAdversary::kOblivious ? "oblivious" : "adaptive";
  rep.n = h.n();
  rep.c = c;
  rep.cost = h.cost();
  rep.list_size = s.list_size();
  std::set<std::uint64_t> seen(s.list().begin(), s.list().end());
  rep.initial_duplicates = s.list_size() - seen.size();

  std::vector<LobUpdate> script;
  if (adversary == LobAdversary::kOblivious) {
    for (std::uint64_t t = 0; t < steps; ++t) {
      script.push_back({UniformIndex(rng, s.universe()), UniformIndex(rng, s.universe())});
    }
  }
  auto check = [&](const LobOutput& out, std::uint64_t step) {
    std::string why;
    if (s.excluded().count(out.x)) {
      why = "x in X";
    } else if (out.values.size() != s.list_size()) {
      why = "wrong list length";
    } else {
      for (std::size_t i = 0; i < out.values.size() && why.empty(); ++i) {
        if (out.values[i] != referee(out.x, s.list()[i])) why = "wrong value at " + std::to_string(i);
      }
    }
    if (!why.empty()) rep.violation = "step " + std::to_string(step) + ": " + why;
    return why.empty();
  };

  auto before = oracle.reads();
  LobOutput out = alg.Init(s, Rng(DeriveSeed(seed, 1)));
  rep.preprocess_reads = oracle.reads() - before;
  if (check(out, 0)) {
    for (std::uint64_t t = 0; t < steps; ++t) {
      const LobUpdate up = adversary == LobAdversary::kOblivious
                               ? script[t]
                               : LobUpdate{out.x, UniformIndex(rng, s.universe())};
      s.Apply(up);
      rep.inserted_repeat.push_back(!seen.insert(up.inserted).second);
      before = oracle.reads();
      out = alg.Update(s, up);
      rep.update_reads.push_back(oracle.reads() - before);
      if (!check(out, t + 1)) break;
    }
  }
  rep.restarts = alg.restarts();
  rep.excluded_size = s.excluded().size();
  rep.excluded_limit = s.excluded_limit();
  return rep;
}

}  // namespace robustdyn::separation
