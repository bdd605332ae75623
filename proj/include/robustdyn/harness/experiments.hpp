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
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "robustdyn/common/random.hpp"
#include "robustdyn/estimators/factory.hpp"
#include "robustdyn/graph/generators.hpp"
#include "robustdyn/harness/algorithm.hpp"
#include "robustdyn/harness/attacks.hpp"
#include "robustdyn/harness/config.hpp"
#include "robustdyn/harness/game.hpp"
#include "robustdyn/harness/metrics.hpp"
#include "robustdyn/harness/scripts.hpp"
#include "robustdyn/wrapper/params.hpp"

namespace robustdyn::harness {

// Receives every finished game with identifying tags.
using GameSink = std::function<void(const GameResult&, const Json& tags)>;

// Wrapper parameters shared by every experiment config.
struct WrapperKnobs {
  std::uint64_t T = 50;
  double U = 256;
  double alpha = 0.1;
  double delta_fail = 0.05;
  std::string constants = "scaled";
  double s_mult = 4;
  double c_mult = 0.3;

  void Read(const Config& c) {
    T = c.GetUint("T", T);
    U = c.GetDouble("U", U);
    alpha = c.GetDouble("alpha", alpha);
    delta_fail = c.GetDouble("delta_fail", delta_fail);
    constants = c.GetString("constants", constants);
    s_mult = c.GetDouble("s_mult", s_mult);
    c_mult = c.GetDouble("c_mult", c_mult);
  }

  wrapper::WrapperParams Params() const {
    if (constants == "paper") return wrapper::DeriveParams(T, U, alpha, delta_fail, wrapper::PaperConstants());
    internal::Require(constants == "scaled", "constants must be paper or scaled");
    return wrapper::DeriveParams(T, U, alpha, delta_fail,
                                 {wrapper::ConstantsMode::kScaled, s_mult, c_mult, 0.5});
  }
};

inline Json ParamsJson(const wrapper::WrapperParams& p) {
  return {{"T", p.T},
          {"U", p.U},
          {"alpha", p.alpha},
          {"delta_fail", p.delta_fail},
          {"constants", wrapper::ConstantsModeName(p.constants.mode)},
          {"beta", p.beta},
          {"eps_med", p.eps_med},
          {"grid", p.grid.size()},
          {"Gamma", p.gamma},
          {"s", p.s},
          {"c", p.c},
          {"transcript_epsilon", wrapper::TranscriptEpsilon(p)}};
}

// Target for a frequency over n independent trials: target - 3 sigma.
inline double ThreeSigmaFloor(double target, std::uint64_t n) {
  if (n == 0) return target;
  return target - 3.0 * std::sqrt(target * (1.0 - target) / static_cast<double>(n));
}

// Single-copy runs against the attack, then wrapped runs against the same
// attack on the same seed family.
struct AttackReport {
  std::string problem;
  std::uint64_t single_trials = 0;
  std::uint64_t single_successes = 0;  // per-step accuracy below 1/2
  double single_mean_accuracy = 0.0;
  std::uint64_t wrapped_trials = 0;
  std::uint64_t wrapped_all_accurate = 0;
  double wrapped_min_accuracy = 1.0;
  std::uint64_t copy_steps = 0;        // steps with a measured copy fraction
  std::uint64_t copy_steps_below = 0;  // of those, fraction below 4/5
  double copy_fraction_min = 1.0;
  std::uint64_t violations = 0;
  wrapper::WrapperParams params = wrapper::DeriveParams(1, 2, 1, 0.5);

  double single_success_rate() const {
    return single_trials ? double(single_successes) / double(single_trials) : 0.0;
  }
  double wrapped_rate() const {
    return wrapped_trials ? double(wrapped_all_accurate) / double(wrapped_trials) : 1.0;
  }
  double copy_good_rate() const {
    return copy_steps ? 1.0 - double(copy_steps_below) / double(copy_steps) : 1.0;
  }

  void AddSingle(const GameResult& r) {
    ++single_trials;
    single_successes += r.accuracy_frequency() < 0.5;
    single_mean_accuracy += r.accuracy_frequency();
    violations += r.violation.has_value();
  }
  void AddWrapped(const GameResult& r) {
    ++wrapped_trials;
    wrapped_all_accurate += r.all_accurate();
    wrapped_min_accuracy = std::min(wrapped_min_accuracy, r.accuracy_frequency());
    violations += r.violation.has_value();
    for (const auto& s : r.records) {
      if (s.copy_fraction < 0.0) continue;
      ++copy_steps;
      copy_steps_below += s.copy_fraction < 0.8;
      copy_fraction_min = std::min(copy_fraction_min, s.copy_fraction);
    }
  }
  void Finish() {
    if (single_trials) single_mean_accuracy /= double(single_trials);
  }

  Json ToJson() const {
    return {{"problem", problem},
            {"single_trials", single_trials},
            {"single_successes", single_successes},
            {"single_success_rate", single_success_rate()},
            {"single_mean_accuracy", single_mean_accuracy},
            {"wrapped_trials", wrapped_trials},
            {"wrapped_all_accurate", wrapped_all_accurate},
            {"wrapped_rate", wrapped_rate()},
            {"wrapped_target", ThreeSigmaFloor(1.0 - params.delta_fail, wrapped_trials)},
            {"wrapped_min_accuracy", wrapped_min_accuracy},
            {"copy_steps", copy_steps},
            {"copy_steps_below_4_5", copy_steps_below},
            {"copy_fraction_min", copy_fraction_min},
            {"violations", violations},
            {"params", ParamsJson(params)}};
  }
};

struct MinCutAttackConfig {
  std::size_t k = 20;  // clique size
  double clique_weight = 10;
  std::size_t bridges = 60;
  std::size_t floor = 45;
  double rho = 0.5;
  double epsilon = 0.25;
  std::uint64_t steps = 500;
  std::uint64_t single_trials = 100;
  std::uint64_t wrapped_trials = 30;
  bool measure_copies = true;
  WrapperKnobs wrapper;

  static MinCutAttackConfig From(const Config& c) {
    MinCutAttackConfig m;
    m.k = c.GetUint("k", m.k);
    m.clique_weight = c.GetDouble("clique_weight", m.clique_weight);
    m.bridges = c.GetUint("bridges", m.bridges);
    m.floor = c.GetUint("floor", m.floor);
    m.rho = c.GetDouble("rho", m.rho);
    m.epsilon = c.GetDouble("epsilon", m.epsilon);
    m.steps = c.GetUint("steps", m.steps);
    m.single_trials = c.GetUint("single_trials", m.single_trials);
    m.wrapped_trials = c.GetUint("wrapped_trials", m.wrapped_trials);
    m.measure_copies = c.GetBool("measure_copies", m.measure_copies);
    m.wrapper.Read(c);
    return m;
  }
};

inline AttackReport RunMinCutAttack(const MinCutAttackConfig& cfg, std::uint64_t seed,
                                    const GameSink& sink = {}) {
  AttackReport rep;
  rep.problem = "mincut";
  rep.params = cfg.wrapper.Params();
  Instance x;
  x.graph = graph::TwoCliques(cfg.k, cfg.clique_weight, cfg.bridges);
  const auto factory =
      estimators::MakeFactory({.kind = "mincut", .epsilon = cfg.epsilon, .rho = cfg.rho});
  auto adversary = [&](std::uint64_t t) {
    return ProbeEdgeAttack::MinCut(cfg.k, cfg.floor, AdversaryModel::kAdaptive,
                                   Rng(DeriveSeed(seed, 2, t)));
  };
  for (std::uint64_t t = 0; t < cfg.single_trials; ++t) {
    SingleCopy alg(factory, DeriveSeed(seed, 1, t));
    auto adv = adversary(t);
    const auto r = RunGame(alg, adv, x, {cfg.steps, false});
    rep.AddSingle(r);
    if (sink) sink(r, {{"experiment", "attack-mincut"}, {"arm", "single"}, {"trial", t}});
  }
  for (std::uint64_t t = 0; t < cfg.wrapped_trials; ++t) {
    Wrapped alg(factory, rep.params, DeriveSeed(seed, 1, t));
    auto adv = adversary(t);
    const auto r = RunGame(alg, adv, x, {cfg.steps, cfg.measure_copies});
    rep.AddWrapped(r);
    if (sink) sink(r, {{"experiment", "attack-mincut"}, {"arm", "wrapped"}, {"trial", t}});
  }
  rep.Finish();
  return rep;
}

struct SumAttackConfig {
  std::size_t items = 100;
  int vmax = 10;
  double rate = 0.5;
  double epsilon = 0.2;
  std::uint64_t steps = 300;
  std::uint64_t single_trials = 100;
  std::uint64_t wrapped_trials = 200;
  bool measure_copies = false;
  WrapperKnobs wrapper{.T = 50, .U = 1e5, .c_mult = 0.1};

  static SumAttackConfig From(const Config& c) {
    SumAttackConfig m;
    m.items = c.GetUint("items", m.items);
    m.vmax = static_cast<int>(c.GetUint("vmax", m.vmax));
    m.rate = c.GetDouble("rate", m.rate);
    m.epsilon = c.GetDouble("epsilon", m.epsilon);
    m.steps = c.GetUint("steps", m.steps);
    m.single_trials = c.GetUint("single_trials", m.single_trials);
    m.wrapped_trials = c.GetUint("wrapped_trials", m.wrapped_trials);
    m.measure_copies = c.GetBool("measure_copies", m.measure_copies);
    m.wrapper.Read(c);
    return m;
  }
};

inline AttackReport RunSumAttack(const SumAttackConfig& cfg, std::uint64_t seed,
                                 const GameSink& sink = {}) {
  AttackReport rep;
  rep.problem = "sum";
  rep.params = cfg.wrapper.Params();
  Rng rng(DeriveSeed(seed, 0, 0));
  Instance x;
  for (std::uint64_t i = 0; i < cfg.items; ++i) x.values[i] = 1.0 + UniformIndex(rng, cfg.vmax);
  const auto factory =
      estimators::MakeFactory({.kind = "sum", .epsilon = cfg.epsilon, .rate = cfg.rate});
  for (std::uint64_t t = 0; t < cfg.single_trials; ++t) {
    SingleCopy alg(factory, DeriveSeed(seed, 1, t));
    SumAttack adv(cfg.vmax, AdversaryModel::kAdaptive);
    const auto r = RunGame(alg, adv, x, {cfg.steps, false});
    rep.AddSingle(r);
    if (sink) sink(r, {{"experiment", "attack-sum"}, {"arm", "single"}, {"trial", t}});
  }
  for (std::uint64_t t = 0; t < cfg.wrapped_trials; ++t) {
    Wrapped alg(factory, rep.params, DeriveSeed(seed, 1, t));
    SumAttack adv(cfg.vmax, AdversaryModel::kAdaptive);
    const auto r = RunGame(alg, adv, x, {cfg.steps, cfg.measure_copies});
    rep.AddWrapped(r);
    if (sink) sink(r, {{"experiment", "attack-sum"}, {"arm", "wrapped"}, {"trial", t}});
  }
  rep.Finish();
  return rep;
}

struct LandmarkConfig {
  std::size_t n = 64;
  std::size_t degree = 6;
  std::size_t landmarks = 1;
  std::uint64_t steps = 1000;
  std::uint64_t trials = 10;
  std::size_t churn_every = 4;

  static LandmarkConfig From(const Config& c) {
    LandmarkConfig m;
    m.n = c.GetUint("n", m.n);
    m.degree = c.GetUint("degree", m.degree);
    m.landmarks = c.GetUint("landmarks", m.landmarks);
    m.steps = c.GetUint("steps", m.steps);
    m.trials = c.GetUint("trials", m.trials);
    m.churn_every = c.GetUint("churn_every", m.churn_every);
    return m;
  }
};

struct LandmarkReport {
  std::uint64_t trials = 0;
  std::uint64_t steps = 0;
  std::uint64_t adaptive_recommits = 0;
  std::uint64_t adaptive_isolations = 0;
  std::uint64_t oblivious_recommits = 0;
  std::uint64_t all_landmarks_recommits = 0;
  double oblivious_accuracy = 0.0;

  Json ToJson() const {
    return {{"trials", trials},
            {"steps_per_trial", steps},
            {"adaptive_recommits", adaptive_recommits},
            {"adaptive_isolations", adaptive_isolations},
            {"oblivious_recommits", oblivious_recommits},
            {"all_landmarks_recommits", all_landmarks_recommits},
            {"oblivious_accuracy", oblivious_accuracy}};
  }
};

// Recommits forced by the landmark attack, against an oblivious workload of
// the same length, and against an estimator whose landmark set is V.
inline LandmarkReport RunLandmarkExperiment(const LandmarkConfig& cfg, std::uint64_t seed,
                                            const GameSink& sink = {}) {
  LandmarkReport rep;
  rep.trials = cfg.trials;
  rep.steps = cfg.steps;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    Rng rng(DeriveSeed(seed, 0, t));
    Instance x;
    x.graph = graph::RandomRegular(cfg.n, cfg.degree, rng);
    const auto factory = estimators::MakeFactory({.kind = "distance", .landmarks = cfg.landmarks});
    {
      SingleCopy alg(factory, DeriveSeed(seed, 1, t));
      LandmarkAttack adv(AdversaryModel::kAdaptive, Rng(DeriveSeed(seed, 2, t)));
      const auto r = RunGame(alg, adv, x, {cfg.steps, false});
      rep.adaptive_recommits += alg.recommits();
      rep.adaptive_isolations += adv.isolations();
      if (sink) sink(r, {{"experiment", "landmark"}, {"arm", "adaptive"}, {"trial", t}});
    }
    const auto script = PairQueryScript(x.graph, cfg.steps, cfg.churn_every, rng);
    {
      SingleCopy alg(factory, DeriveSeed(seed, 1, t));
      auto adv = ScriptAdversary::FromUpdates(script);
      const auto r = RunGame(alg, adv, x, {cfg.steps, false});
      rep.oblivious_recommits += alg.recommits();
      rep.oblivious_accuracy += r.accuracy_frequency() / double(cfg.trials);
      if (sink) sink(r, {{"experiment", "landmark"}, {"arm", "oblivious"}, {"trial", t}});
    }
    {
      SingleCopy alg(estimators::MakeFactory({.kind = "distance", .landmarks = cfg.n}),
                     DeriveSeed(seed, 1, t));
      LandmarkAttack adv(AdversaryModel::kAdaptive, Rng(DeriveSeed(seed, 2, t)));
      RunGame(alg, adv, x, {cfg.steps, false});
      rep.all_landmarks_recommits += alg.recommits();
    }
  }
  return rep;
}

struct PipelineConfig {
  std::string cluster = "complete";  // complete | regular
  std::size_t k = 30;                // cluster size
  std::size_t degree = 14;           // for regular clusters
  std::size_t bridges = 10;
  std::size_t floor = 6;
  double epsilon = 0.25;
  double oversample = 8;
  double phi = 0.1;
  std::uint64_t phases = 5;
  std::uint64_t trials = 30;
  std::string adversary = "blinking";  // blinking | oblivious
  WrapperKnobs wrapper{.T = 25, .U = 64, .c_mult = 0.2};

  static PipelineConfig From(const Config& c) {
    PipelineConfig m;
    m.cluster = c.GetString("cluster", m.cluster);
    m.k = c.GetUint("k", m.k);
    m.degree = c.GetUint("degree", m.degree);
    m.bridges = c.GetUint("bridges", m.bridges);
    m.floor = c.GetUint("floor", m.floor);
    m.epsilon = c.GetDouble("epsilon", m.epsilon);
    m.oversample = c.GetDouble("oversample", m.oversample);
    m.phi = c.GetDouble("phi", m.phi);
    m.phases = c.GetUint("phases", m.phases);
    m.trials = c.GetUint("trials", m.trials);
    m.adversary = c.GetString("adversary", m.adversary);
    m.wrapper.Read(c);
    return m;
  }

  wrapper::PipelineOptions Options() const {
    wrapper::PipelineOptions o;
    o.problem = estimators::Problem::kMinCut;
    o.epsilon = epsilon;
    o.sampling.oversample = oversample;
    o.decomposition.phi = phi;
    return o;
  }

  Graph BuildGraph(Rng& rng) const {
    if (cluster == "complete") return graph::TwoCliques(k, 1.0, bridges);
    internal::Require(cluster == "regular", "cluster must be complete or regular");
    const auto a = graph::RandomRegular(k, degree, rng);
    const auto b = graph::RandomRegular(k, degree, rng);
    return graph::BridgedPair(a, b, bridges);
  }
};

struct PipelineReport {
  std::uint64_t trials = 0;
  std::uint64_t all_accurate = 0;
  double min_accuracy = 1.0;
  std::uint64_t steps = 0;
  std::uint64_t phases_min = 0;
  std::uint64_t edges = 0;
  double decompose_work = 0;
  double initial_issue_work = 0;
  double refresh_work = 0;  // mean over phase refreshes and trials
  double update_work_per_step = 0;
  double query_work_per_step = 0;
  std::uint64_t violations = 0;
  wrapper::WrapperParams params = wrapper::DeriveParams(1, 2, 1, 0.5);

  double rate() const { return trials ? double(all_accurate) / double(trials) : 1.0; }

  Json ToJson() const {
    return {{"trials", trials},
            {"all_accurate", all_accurate},
            {"rate", rate()},
            {"target", ThreeSigmaFloor(1.0 - params.delta_fail, trials)},
            {"min_accuracy", min_accuracy},
            {"steps", steps},
            {"phases_min", phases_min},
            {"edges", edges},
            {"decompose_work", decompose_work},
            {"initial_issue_work", initial_issue_work},
            {"refresh_work", refresh_work},
            {"refresh_over_decompose", decompose_work > 0 ? refresh_work / decompose_work : 0.0},
            {"update_work_per_step", update_work_per_step},
            {"query_work_per_step", query_work_per_step},
            {"violations", violations},
            {"params", ParamsJson(params)}};
  }
};

// The sparsified min-cut pipeline run for `phases` phases of T steps each.
inline PipelineReport RunPipelineExperiment(const PipelineConfig& cfg, std::uint64_t seed,
                                            const GameSink& sink = {}) {
  PipelineReport rep;
  rep.params = cfg.wrapper.Params();
  rep.steps = cfg.phases * rep.params.T;
  rep.phases_min = ~0ULL;
  std::uint64_t refreshes = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    Rng rng(DeriveSeed(seed, 0, t));
    Instance x;
    x.graph = cfg.BuildGraph(rng);
    rep.edges = x.graph.num_edges();
    Pipeline alg(cfg.Options(), rep.params, DeriveSeed(seed, 1, t));
    GameResult r;
    if (cfg.adversary == "oblivious") {
      auto adv = ScriptAdversary::FromUpdates(
          BridgeChurnScript(cfg.k, x.graph, cfg.floor, cfg.bridges, rep.steps, rng));
      r = RunGame(alg, adv, x, {rep.steps, false});
    } else {
      internal::Require(cfg.adversary == "blinking", "adversary must be blinking or oblivious");
      auto adv = ProbeEdgeAttack::MinCut(cfg.k, cfg.floor, AdversaryModel::kBlinking,
                                         Rng(DeriveSeed(seed, 2, t)));
      r = RunGame(alg, adv, x, {rep.steps, false});
    }
    ++rep.trials;
    rep.all_accurate += r.all_accurate();
    rep.min_accuracy = std::min(rep.min_accuracy, r.accuracy_frequency());
    rep.violations += r.violation.has_value();
    const auto& p = alg.pipeline();
    rep.phases_min = std::min(rep.phases_min, p.phase());
    rep.decompose_work += double(p.decompose_work()) / double(cfg.trials);
    const auto& rw = p.refresh_work();
    rep.initial_issue_work += double(rw.front()) / double(cfg.trials);
    for (std::size_t i = 1; i < rw.size(); ++i, ++refreshes) rep.refresh_work += double(rw[i]);
    const auto w = p.work();
    rep.update_work_per_step += double(w.update) / double(rep.steps * cfg.trials);
    rep.query_work_per_step += double(w.query) / double(rep.steps * cfg.trials);
    if (sink) sink(r, {{"experiment", "pipeline"}, {"cluster", cfg.cluster}, {"trial", t}});
  }
  if (refreshes) rep.refresh_work /= double(refreshes);
  return rep;
}

}  // namespace robustdyn::harness
