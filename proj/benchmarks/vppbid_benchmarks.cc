// Copyright 2026 The vppbid Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "instances.h"
#include "vppbid/branch_and_bound.h"
#include "vppbid/lp_solver.h"
#include "vppbid/mps.h"
#include "vppbid/offer_optimizer.h"
#include "vppbid/scenario_engine.h"

namespace vppbid {
namespace {

// Sinusoidal prices with uniform noise and uniform wind; harder than the
// copula-sampled trees because consecutive intervals are uncorrelated.
testing::Instance StressInstance(int num_da, int num_ba, int num_energy) {
  constexpr int kHorizon = 24;
  testing::Instance inst;
  VppConfig& c = inst.config;
  c.horizon = kHorizon;
  c.renewable.capacity = 50;
  c.thermal = {70, 0, 30, 30, 45, 0, 0};
  c.storage.level_max = 80;
  c.storage.charge_max = 30;
  c.storage.discharge_max = 30;
  c.storage.efficiency = 0.81;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0, 1);
  ScenarioTree& t = inst.tree;
  for (int i = 0; i < num_da; ++i) {
    std::vector<double> da;
    for (int k = 0; k < kHorizon; ++k) {
      da.push_back(30 + 20 * std::sin(k / 4.0) + 10 * unit(rng));
    }
    std::vector<std::vector<double>> ba;
    for (int j = 0; j < num_ba; ++j) {
      std::vector<double> row;
      for (int k = 0; k < kHorizon; ++k) {
        row.push_back(da[k] + 20 * (unit(rng) - 0.5));
      }
      ba.push_back(row);
    }
    t.da_prices.push_back(da);
    t.da_prob.push_back(1.0 / num_da);
    t.ba_prices.push_back(ba);
    t.ba_prob.push_back(std::vector<double>(num_ba, 1.0 / num_ba));
  }
  for (int w = 0; w < num_energy; ++w) {
    std::vector<double> e;
    for (int k = 0; k < kHorizon; ++k) e.push_back(50 * unit(rng));
    t.energy.push_back(e);
    t.energy_prob.push_back(1.0 / num_energy);
  }
  return inst;
}

OfferModel ReducedModel(const testing::Instance& inst, StrategyMode mode) {
  return EliminateRedundantBinaries(BuildModel(inst.config, inst.tree, mode),
                                    inst.config);
}

void BM_RootRelaxation(benchmark::State& state) {
  const auto inst = testing::SyntheticCaseStudy(
      static_cast<int>(state.range(0)), 2, 2, 1);
  const auto offer = ReducedModel(inst, StrategyMode::kActivePassive);
  for (auto _ : state) {
    benchmark::DoNotOptimize(milp::SolveLp(offer.model));
  }
  state.counters["columns"] = offer.model.num_columns();
}
BENCHMARK(BM_RootRelaxation)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SolveGolden(benchmark::State& state) {
  const auto inst = testing::TwoIntervalExample();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveStrategy(inst.config, inst.tree,
                                           StrategyMode::kActivePassive));
  }
}
BENCHMARK(BM_SolveGolden)->Unit(benchmark::kMicrosecond);

void BM_SolveReducedCaseStudy(benchmark::State& state) {
  const auto inst = testing::SyntheticCaseStudy(3, 2, 2, state.range(0));
  for (auto _ : state) {
    const auto r = SolveStrategy(inst.config, inst.tree,
                                 StrategyMode::kActivePassive);
    state.counters["nodes"] = static_cast<double>(r.stats.nodes);
  }
}
BENCHMARK(BM_SolveReducedCaseStudy)
    ->Arg(1)
    ->Arg(2)
    ->Iterations(1)
    ->Unit(benchmark::kSecond);

void BM_BranchingRule(benchmark::State& state) {
  const auto inst = testing::SyntheticCaseStudy(2, 2, 2, 3, 12);
  const auto offer = ReducedModel(inst, StrategyMode::kActivePassive);
  milp::MilpLimits limits;
  limits.branching = state.range(0) == 0 ? milp::BranchingRule::kReliability
                                         : milp::BranchingRule::kMostFractional;
  limits.max_seconds = 30;
  for (auto _ : state) {
    const auto r = milp::SolveMilp(offer.model, limits);
    state.counters["nodes"] = static_cast<double>(r.stats.nodes);
    state.counters["gap"] = r.stats.gap;
  }
}
BENCHMARK(BM_BranchingRule)
    ->Arg(0)
    ->Arg(1)
    ->Iterations(1)
    ->Unit(benchmark::kMillisecond);

// Time-limited: the full solve takes minutes.
void BM_StressInstance(benchmark::State& state) {
  const auto inst = StressInstance(3, 2, 2);
  milp::MilpLimits limits;
  limits.max_seconds = static_cast<double>(state.range(0));
  for (auto _ : state) {
    const auto r = SolveStrategy(inst.config, inst.tree,
                                 StrategyMode::kActivePassive, limits);
    state.counters["nodes"] = static_cast<double>(r.stats.nodes);
    state.counters["gap"] = r.stats.gap;
  }
}
BENCHMARK(BM_StressInstance)->Arg(10)->Iterations(1)->Unit(benchmark::kSecond);

void BM_BuildAndExportCaseStudy(benchmark::State& state) {
  const auto inst = testing::SyntheticCaseStudy(10, 6, 5, 1);
  for (auto _ : state) {
    const auto offer = ReducedModel(inst, StrategyMode::kActivePassive);
    benchmark::DoNotOptimize(milp::ExportMps(offer.model, "vpp"));
  }
}
BENCHMARK(BM_BuildAndExportCaseStudy)->Unit(benchmark::kMillisecond);

void BM_SampleTrajectories(benchmark::State& state) {
  const int samples = static_cast<int>(state.range(0));
  const auto forecast = testing::SyntheticPriceForecast(24);
  const auto covariance = scenario::BuildCovariance(4.0, 24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scenario::SampleTrajectories(forecast, covariance, samples, 42));
  }
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_SampleTrajectories)->Arg(300)->Arg(3000);

void BM_ReduceScenarios(benchmark::State& state) {
  const auto set = scenario::SampleTrajectories(
      testing::SyntheticPriceForecast(24), scenario::BuildCovariance(4.0, 24),
      static_cast<int>(state.range(0)), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scenario::ReduceScenarios(set, 10));
  }
}
BENCHMARK(BM_ReduceScenarios)->Arg(100)->Arg(300)->Unit(
    benchmark::kMillisecond);

}  // namespace
}  // namespace vppbid

BENCHMARK_MAIN();
