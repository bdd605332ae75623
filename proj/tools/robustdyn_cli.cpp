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

// Command-line driver for the experiments. Every subcommand reads a flat
// key = value config, writes JSON Lines to --out and prints a summary table.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "robustdyn/estimators/factory.hpp"
#include "robustdyn/graph/generators.hpp"
#include "robustdyn/harness/experiments.hpp"
#include "robustdyn/separation/boxes.hpp"
#include "robustdyn/separation/list_of_outputs.hpp"

namespace {

using namespace robustdyn;
using harness::Config;
using harness::Json;

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;
  std::string out;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InvalidArgument("cannot write " + path);
  }
  void Line(const Json& j) {
    if (file_) *file_ << j.dump() << '\n';
  }
  void Game(const harness::GameResult& r, const Json& tags, bool steps) {
    if (!file_) return;
    if (steps) harness::WriteJsonl(*file_, r, tags);
    Json s = harness::Summary(r);
    s.update(tags);
    s["type"] = "game";
    Line(s);
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// Two-column table of a flat JSON object; nested objects are flattened.
void PrintTable(const std::string& title, const Json& j, const std::string& prefix = "") {
  if (prefix.empty()) std::cout << "\n== " << title << " ==\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      PrintTable(title, *it, prefix + it.key() + ".");
      continue;
    }
    std::cout << "  " << std::left << std::setw(32) << (prefix + it.key()) << ' '
              << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  }
}

Config LoadConfig(const Common& c) {
  Config cfg = c.config.empty() ? Config() : Config::Load(c.config);
  return cfg;
}

void WarnUnused(const Config& cfg) {
  for (const auto& k : cfg.UnusedKeys()) std::cerr << "warning: unused config key " << k << '\n';
}

harness::AdversaryModel ParseModel(const std::string& s) {
  if (s == "oblivious") return harness::AdversaryModel::kOblivious;
  if (s == "adaptive") return harness::AdversaryModel::kAdaptive;
  if (s == "blinking") return harness::AdversaryModel::kBlinking;
  throw InvalidArgument("model must be oblivious, adaptive or blinking");
}

// One configurable game per trial.
int CmdRun(const Common& c) {
  const Config cfg = LoadConfig(c);
  const std::string problem = cfg.GetString("problem", "mincut");
  const std::string algorithm = cfg.GetString("algorithm", "wrapped");
  const std::string adversary = cfg.GetString("adversary", "attack");
  const auto model = ParseModel(cfg.GetString("model", "adaptive"));
  const std::uint64_t steps = cfg.GetUint("steps", 200);
  const bool measure = cfg.GetBool("measure_copies", false);
  const std::uint64_t trials = c.trials.value_or(cfg.GetUint("trials", 1));
  harness::WrapperKnobs knobs;
  knobs.Read(cfg);

  estimators::EstimatorOptions eo;
  eo.kind = problem;
  eo.epsilon = cfg.GetDouble("epsilon", 0.25);
  eo.rho = cfg.GetDouble("rho", 0.5);
  eo.rate = cfg.GetDouble("rate", 0.5);
  eo.landmarks = cfg.GetUint("landmarks", 1);
  const std::size_t k = cfg.GetUint("k", 20);
  const double clique_weight = cfg.GetDouble("clique_weight", 10);
  const std::size_t bridges = cfg.GetUint("bridges", 60);
  const std::size_t floor = cfg.GetUint("floor", 45);
  const std::size_t items = cfg.GetUint("items", 100);
  const int vmax = static_cast<int>(cfg.GetUint("vmax", 10));
  const std::size_t n = cfg.GetUint("n", 64);
  const std::size_t degree = cfg.GetUint("degree", 6);
  const std::size_t churn = cfg.GetUint("churn_every", 4);
  WarnUnused(cfg);

  const auto factory = estimators::MakeFactory(eo);
  const auto params = knobs.Params();
  Output out(c.out);
  out.Line({{"type", "params"}, {"params", harness::ParamsJson(params)}});
  double acc_sum = 0;
  std::uint64_t all_ok = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(DeriveSeed(c.seed, 0, t));
    Rng adv_rng(DeriveSeed(c.seed, 2, t));
    harness::Instance x;
    std::unique_ptr<harness::Adversary> adv;
    std::vector<harness::Update> script;
    if (problem == "mincut") {
      x.graph = graph::TwoCliques(k, clique_weight, bridges);
      if (adversary == "attack") {
        adv = std::make_unique<harness::ProbeEdgeAttack>(
            harness::ProbeEdgeAttack::MinCut(k, floor, model, std::move(adv_rng)));
      } else {
        script = harness::BridgeChurnScript(k, x.graph, floor, bridges, steps, rng);
      }
    } else if (problem == "sum") {
      for (std::uint64_t i = 0; i < items; ++i) x.values[i] = 1.0 + UniformIndex(rng, vmax);
      if (adversary == "attack") {
        adv = std::make_unique<harness::SumAttack>(vmax, model);
      } else {
        script = harness::SumChurnScript(x, steps, vmax, rng);
      }
    } else if (problem == "distance") {
      x.graph = graph::RandomRegular(n, degree, rng);
      if (adversary == "attack") {
        adv = std::make_unique<harness::LandmarkAttack>(model, std::move(adv_rng));
      } else {
        script = harness::PairQueryScript(x.graph, steps, churn, rng);
      }
    } else {
      throw InvalidArgument("run supports problem = mincut, sum or distance");
    }
    if (!adv) {
      internal::Require(adversary == "script", "adversary must be attack or script");
      adv = std::make_unique<harness::ScriptAdversary>(harness::ScriptAdversary::FromUpdates(script));
    }

    std::unique_ptr<harness::GameAlgorithm> alg;
    const auto alg_seed = DeriveSeed(c.seed, 1, t);
    if (algorithm == "single") {
      alg = std::make_unique<harness::SingleCopy>(factory, alg_seed);
    } else if (algorithm == "wrapped") {
      alg = std::make_unique<harness::Wrapped>(factory, params, alg_seed);
    } else if (algorithm == "worst-case") {
      alg = std::make_unique<harness::Staggered>(factory, params, alg_seed);
    } else {
      throw InvalidArgument("algorithm must be single, wrapped or worst-case");
    }
    const auto r = harness::RunGame(*alg, *adv, x, {steps, measure});
    out.Game(r, {{"experiment", "run"}, {"trial", t}}, true);
    if (r.violation) std::cerr << "trial " << t << ": " << *r.violation << '\n';
    acc_sum += r.accuracy_frequency();
    all_ok += r.all_accurate();
  }
  PrintTable("run", {{"problem", problem},
                     {"algorithm", algorithm},
                     {"adversary", adversary},
                     {"trials", trials},
                     {"steps", steps},
                     {"mean_accuracy_frequency", acc_sum / double(trials)},
                     {"trials_all_accurate", all_ok},
                     {"params", harness::ParamsJson(params)}});
  return 0;
}

int CmdAttack(const Common& c) {
  Config cfg = LoadConfig(c);
  const std::string experiment = cfg.GetString("experiment", "mincut");
  const bool steps = cfg.GetBool("write_steps", false);
  Output out(c.out);
  auto sink = [&](const harness::GameResult& r, const Json& tags) { out.Game(r, tags, steps); };
  Json report;
  if (experiment == "mincut") {
    auto m = harness::MinCutAttackConfig::From(cfg);
    if (c.trials) m.single_trials = m.wrapped_trials = *c.trials;
    WarnUnused(cfg);
    report = harness::RunMinCutAttack(m, c.seed, sink).ToJson();
  } else if (experiment == "sum") {
    auto m = harness::SumAttackConfig::From(cfg);
    if (c.trials) m.single_trials = m.wrapped_trials = *c.trials;
    WarnUnused(cfg);
    report = harness::RunSumAttack(m, c.seed, sink).ToJson();
  } else if (experiment == "landmark") {
    auto m = harness::LandmarkConfig::From(cfg);
    if (c.trials) m.trials = *c.trials;
    WarnUnused(cfg);
    report = harness::RunLandmarkExperiment(m, c.seed, sink).ToJson();
  } else {
    throw InvalidArgument("experiment must be mincut, sum or landmark");
  }
  out.Line({{"type", "report"}, {"experiment", experiment}, {"report", report}});
  PrintTable("attack " + experiment, report);
  return 0;
}

// Cost counters of the sparsified pipeline, one report per cluster family.
int CmdBench(const Common& c) {
  Config cfg = LoadConfig(c);
  const std::string clusters = cfg.GetString("clusters", "complete,regular");
  auto base = harness::PipelineConfig::From(cfg);
  if (c.trials) base.trials = *c.trials;
  WarnUnused(cfg);
  Output out(c.out);
  auto sink = [&](const harness::GameResult& r, const Json& tags) { out.Game(r, tags, false); };
  std::stringstream list(clusters);
  std::string cluster;
  Json reports = Json::object();
  while (std::getline(list, cluster, ',')) {
    auto m = base;
    m.cluster = cluster;
    const auto rep = harness::RunPipelineExperiment(m, c.seed, sink);
    Json j = rep.ToJson();
    j["refresh_work_per_copy"] = rep.params.c ? rep.refresh_work / double(rep.params.c) : 0.0;
    out.Line({{"type", "report"}, {"experiment", "pipeline"}, {"cluster", cluster}, {"report", j}});
    PrintTable("pipeline " + cluster, j);
    reports[cluster] = j;
  }
  if (reports.contains("complete") && reports.contains("regular")) {
    const double a = reports["complete"]["refresh_work"].get<double>();
    const double b = reports["regular"]["refresh_work"].get<double>();
    const Json cmp = {{"refresh_work_complete", a},
                      {"refresh_work_regular", b},
                      {"relative_difference", a > 0 ? std::abs(a - b) / a : 0.0},
                      {"edges_complete", reports["complete"]["edges"]},
                      {"edges_regular", reports["regular"]["edges"]}};
    out.Line({{"type", "comparison"}, {"comparison", cmp}});
    PrintTable("refresh work vs density", cmp);
  }
  return 0;
}

struct SeparationArgs {
  std::string problem = "lob";
  unsigned n = 10;
  unsigned c = 1;
  std::uint64_t chain = 100;
};

int CmdSeparation(const Common& c, const SeparationArgs& s) {
  Config cfg = LoadConfig(c);
  const std::uint64_t trials = c.trials.value_or(cfg.GetUint("trials", 1));
  Output out(c.out);
  if (s.problem == "lob") {
    const std::uint64_t P = cfg.GetUint("cost", 4ULL * s.n);
    const std::uint64_t blocks = cfg.GetUint("blocks", 2);
    const std::uint64_t budget = cfg.GetUint("cache_budget", 1ULL << (s.n / 2));
    WarnUnused(cfg);
    const std::uint64_t L = separation::IntPow(s.n, s.c);
    const std::uint64_t steps = blocks * L;
    std::cout << "\n== list of outputs: n=" << s.n << " c=" << s.c << " P=" << P << " steps=" << steps
              << " ==\n"
              << std::left << std::setw(6) << "trial" << std::setw(18) << "algorithm" << std::setw(11)
              << "adversary" << std::setw(14) << "formula" << std::setw(14) << "counter"
              << std::setw(10) << "restarts" << "violation\n";
    for (std::uint64_t t = 0; t < trials; ++t) {
      const std::uint64_t seed = DeriveSeed(c.seed, t);
      auto emit = [&](const separation::LobReport& r, double formula) {
        Json blocks_json = Json::array();
        for (std::uint64_t b = 0; b < r.blocks(); ++b) {
          blocks_json.push_back({{"reads", r.block_reads(b)},
                                 {"formula", double(L * L * P)},
                                 {"slack", r.block_slack(b)}});
        }
        out.Line({{"type", "lob"},
                  {"trial", t},
                  {"algorithm", r.algorithm},
                  {"adversary", r.adversary},
                  {"n", r.n},
                  {"c", r.c},
                  {"P", r.cost},
                  {"steps", r.steps()},
                  {"preprocess_reads", r.preprocess_reads},
                  {"total_reads", r.total_reads()},
                  {"formula", formula},
                  {"amortized", r.amortized()},
                  {"restarts", r.restarts},
                  {"excluded_within_limit", r.excluded_within_limit()},
                  {"blocks", blocks_json},
                  {"violation", r.violation ? Json(*r.violation) : Json(nullptr)}});
        std::cout << std::setw(6) << t << std::setw(18) << r.algorithm << std::setw(11) << r.adversary
                  << std::setw(14) << formula << std::setw(14) << r.total_reads() << std::setw(10)
                  << r.restarts << (r.violation ? *r.violation : "-") << '\n';
      };
      {
        separation::CostedOracle o(seed);
        const separation::HFunction h(s.n, P, o);
        separation::IncrementalLob alg(h);
        const auto r = separation::RunLob(alg, o, seed, h, s.c, steps,
                                          separation::LobAdversary::kOblivious, seed);
        emit(r, double(L * P + steps * P + r.restarts * L * P));
      }
      {
        separation::CostedOracle o(seed);
        const separation::HFunction h(s.n, P, o);
        separation::IncrementalLob alg(h);
        const auto r = separation::RunLob(alg, o, seed, h, s.c, steps,
                                          separation::LobAdversary::kAdaptive, seed);
        emit(r, double(L * P + steps * L * P));
      }
      {
        separation::CostedOracle o(seed);
        const separation::HFunction h(s.n, P, o);
        separation::CachingLob alg(h, budget);
        const auto r = separation::RunLob(alg, o, seed, h, s.c, steps,
                                          separation::LobAdversary::kAdaptive, seed);
        emit(r, double(L * P + steps * L * P));
      }
    }
    return 0;
  }
  if (s.problem == "boxes") {
    const std::uint64_t m = cfg.GetUint("m", 200);
    const std::uint64_t ell = cfg.GetUint("queries", 50);
    const double alpha = cfg.GetDouble("alpha", 0.1);
    const double beta = cfg.GetDouble("beta", 0.05);
    WarnUnused(cfg);
    const auto r = separation::RunAverageOfBoxes(s.n, m, s.chain, ell, alpha, beta, trials, c.seed);
    const Json j = {{"n", s.n},
                    {"m", r.m},
                    {"queries", r.ell},
                    {"chain", r.chain},
                    {"alpha", r.alpha},
                    {"beta", r.beta},
                    {"trials", r.trials},
                    {"opened_w", r.opened},
                    {"formula_reads_wT", r.opened * r.chain},
                    {"counter_reads", r.oracle_reads},
                    {"formula_query_units", r.ell * r.opened},
                    {"counter_query_units", r.query_units},
                    {"counters_match_all_trials", r.counters_match},
                    {"within_alpha_rate", r.within_rate()},
                    {"max_error", r.max_error}};
    out.Line({{"type", "boxes"}, {"report", j}});
    PrintTable("average of boxes", j);
    return 0;
  }
  throw InvalidArgument("--problem must be lob or boxes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robustdyn: adversarially robust dynamic estimation experiments"};
  app.require_subcommand(1);
  Common common;
  SeparationArgs sep;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "key = value config file");
    sub->add_option("--seed", common.seed, "master seed");
    sub->add_option("--trials", common.trials, "override the trial count");
    sub->add_option("--out", common.out, "JSON Lines output path");
  };
  auto* run = app.add_subcommand("run", "one configurable game per trial");
  auto* attack = app.add_subcommand("attack", "attack against a single copy and the wrapper");
  auto* bench = app.add_subcommand("bench", "cost counters of the sparsified pipeline");
  auto* separation = app.add_subcommand("separation", "cost-counted separation simulations");
  for (auto* sub : {run, attack, bench, separation}) add_common(sub);
  separation->add_option("--problem", sep.problem, "lob or boxes")->check(CLI::IsMember({"lob", "boxes"}));
  separation->add_option("--n", sep.n, "string length n");
  separation->add_option("--c", sep.c, "list exponent c (lob)");
  separation->add_option("--chain-len", sep.chain, "oracle chain length T (boxes)");
  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return CmdRun(common);
    if (*attack) return CmdAttack(common);
    if (*bench) return CmdBench(common);
    if (*separation) return CmdSeparation(common, sep);
  } catch (const robustdyn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
