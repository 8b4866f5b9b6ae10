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


#include "vppbid/offer_optimizer.h"

#include <algorithm>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "instances.h"
#include "invariants.h"
#include "oracles.h"
#include "vppbid/branch_and_bound.h"
#include "vppbid/strategy_report.h"

namespace vppbid {
namespace {

using milp::MilpStatus;

int CountRows(const milp::MilpModel& model, const std::string& prefix) {
  return static_cast<int>(std::count_if(
      model.rows().begin(), model.rows().end(),
      [&](const milp::Row& r) { return r.name.rfind(prefix, 0) == 0; }));
}

StrategySolution SolveOrDie(const testing::Instance& inst, StrategyMode mode) {
  const StrategyResult r = SolveStrategy(inst.config, inst.tree, mode);
  EXPECT_EQ(r.status, MilpStatus::kOptimal);
  if (!r.solution) throw std::runtime_error("no solution");
  return *r.solution;
}

TEST(VariableIndex, DecodeInvertsAccessors) {
  const VariableIndex index(2, 3, 2, 4, true);
  EXPECT_EQ(index.num_columns(),
            2 * 4 + 2 * 3 * 4 * 2 + 2 * 2 * 4 * 2 + 2 * 3 * 2 * 4 * 4 + 2 * 4 +
                2 * 3 * 2 * 4);
  for (int c = 0; c < index.num_columns(); ++c) {
    const auto e = index.Decode(c);
    int back = -1;
    switch (e.kind) {
      case VarKind::kQDa: back = index.QDa(e.i, e.k); break;
      case VarKind::kQUp: back = index.QUp(e.i, e.j, e.k); break;
      case VarKind::kQDw: back = index.QDw(e.i, e.j, e.k); break;
      case VarKind::kQPlus: back = index.QPlus(e.i, e.w, e.k); break;
      case VarKind::kQMinus: back = index.QMinus(e.i, e.w, e.k); break;
      case VarKind::kThermal: back = index.Thermal(e.i, e.j, e.w, e.k); break;
      case VarKind::kCharge: back = index.Charge(e.i, e.j, e.w, e.k); break;
      case VarKind::kDischarge:
        back = index.Discharge(e.i, e.j, e.w, e.k);
        break;
      case VarKind::kLevel: back = index.Level(e.i, e.j, e.w, e.k); break;
      case VarKind::kEps: back = index.Eps(e.i, e.k); break;
      case VarKind::kCommit: back = index.Commit(e.i, e.j, e.w, e.k); break;
    }
    ASSERT_EQ(back, c) << index.Name(c);
  }
  EXPECT_EQ(index.Name(index.QDa(0, 1)), "qDA[0,1]");
  EXPECT_EQ(index.Name(index.Thermal(0, 1, 1, 0)), "d[0,1,1,0]");
  // Interval varies fastest.
  EXPECT_EQ(index.QDa(1, 0), index.QDa(0, 3) + 1);
}

TEST(VariableIndex, EliminatedCommitmentThrows) {
  const VariableIndex index(1, 2, 2, 2, false);
  EXPECT_EQ(index.Count(VarKind::kCommit), 0);
  EXPECT_THROW(index.Commit(0, 0, 0, 0), std::logic_error);
}

TEST(RegulationDirection, FromPrices) {
  EXPECT_EQ(ComputeRegulationDirection(25, 26), RegulationDirection::kUp);
  EXPECT_EQ(ComputeRegulationDirection(29, 19), RegulationDirection::kDown);
  EXPECT_EQ(ComputeRegulationDirection(30, 30), RegulationDirection::kNone);
  EXPECT_EQ(ComputeRegulationDirection(30, 30 + 1e-10),
            RegulationDirection::kNone);
  EXPECT_EQ(ComputeRegulationDirection(30, 30 + 1e-8),
            RegulationDirection::kUp);
}

TEST(BuildModel, TwoIntervalCounts) {
  const auto inst = testing::TwoIntervalExample();
  const auto offer =
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive);
  EXPECT_EQ(offer.index.Count(VarKind::kEps), 2);
  EXPECT_EQ(CountRows(offer.model, "bal["), 8);
  EXPECT_TRUE(offer.model.Validate().empty());
  const auto reduced = EliminateRedundantBinaries(offer, inst.config);
  EXPECT_FALSE(reduced.index.has_commitment());
  EXPECT_EQ(reduced.model.num_binaries(), 2);
  for (const auto& c : reduced.model.columns()) {
    EXPECT_NE(c.name.rfind("u[", 0), 0u) << c.name;
  }
}

TEST(BuildModel, ModesFixEpsBounds) {
  const auto inst = testing::TwoIntervalExample();
  for (const auto& [mode, lo, hi] :
       {std::tuple{StrategyMode::kPassiveOnly, 0.0, 0.0},
        std::tuple{StrategyMode::kActiveOnly, 1.0, 1.0},
        std::tuple{StrategyMode::kActivePassive, 0.0, 1.0}}) {
    const auto offer = BuildModel(inst.config, inst.tree, mode);
    for (int i = 0; i < 1; ++i) {
      for (int k = 0; k < 2; ++k) {
        const auto& c = offer.model.column(offer.index.Eps(i, k));
        EXPECT_TRUE(c.is_binary);
        EXPECT_EQ(c.lower, lo);
        EXPECT_EQ(c.upper, hi);
      }
    }
  }
}

TEST(BuildModel, PassiveModeForcesRegulationToZero) {
  const auto inst = testing::TwoIntervalExample();
  const auto offer =
      BuildModel(inst.config, inst.tree, StrategyMode::kPassiveOnly);
  const auto lp = milp::SolveLp(offer.model);
  ASSERT_EQ(lp.status, milp::LpStatus::kOptimal);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(lp.values[offer.index.QUp(0, j, k)], 0.0, 1e-9);
      EXPECT_NEAR(lp.values[offer.index.QDw(0, j, k)], 0.0, 1e-9);
    }
  }
}

TEST(BuildModel, DirectionFixesRegulationBounds) {
  const auto inst = testing::TwoIntervalExample();
  const auto offer =
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive);
  // k1: j1 above DA (up only), j2 below (down only); k2: j1 below, j2 above.
  EXPECT_EQ(offer.model.column(offer.index.QDw(0, 0, 0)).upper, 0.0);
  EXPECT_EQ(offer.model.column(offer.index.QUp(0, 1, 0)).upper, 0.0);
  EXPECT_EQ(offer.model.column(offer.index.QUp(0, 0, 1)).upper, 0.0);
  EXPECT_EQ(offer.model.column(offer.index.QDw(0, 1, 1)).upper, 0.0);
  EXPECT_GT(offer.model.column(offer.index.QUp(0, 0, 0)).upper, 0.0);
  EXPECT_GT(offer.model.column(offer.index.QDw(0, 0, 1)).upper, 0.0);
}

TEST(BuildModel, SingleScenarioTreeHasNoCurveRows) {
  auto inst = testing::TwoIntervalExample();
  inst.tree.ba_prices = {{{26, 19}}};
  inst.tree.ba_prob = {{1.0}};
  inst.tree.energy = {{5, 9}};
  inst.tree.energy_prob = {1.0};
  const auto offer =
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive);
  EXPECT_EQ(CountRows(offer.model, "daCurve"), 0);
  EXPECT_EQ(CountRows(offer.model, "upCurve"), 0);
  EXPECT_EQ(CountRows(offer.model, "dwCurve"), 0);
}

TEST(BuildModel, CurveRowsFollowPriceOrder) {
  testing::Instance inst = testing::TwoIntervalExample();
  inst.tree.da_prices = {{30, 20}, {20, 20}, {25, 29}};
  inst.tree.da_prob = {0.2, 0.3, 0.5};
  inst.tree.ba_prices = {inst.tree.ba_prices[0], inst.tree.ba_prices[0],
                         inst.tree.ba_prices[0]};
  inst.tree.ba_prob = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
  const auto offer =
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive);
  // Consecutive pairs only: two rows per interval.
  EXPECT_EQ(CountRows(offer.model, "daCurve0"), 2);
  EXPECT_EQ(CountRows(offer.model, "daCurve1"), 2);
  // Interval 2 has a tie between scenarios 0 and 1.
  int ties = 0;
  for (const auto& r : offer.model.rows()) {
    if (r.name.rfind("daCurve1", 0) == 0 && r.sense == milp::RowSense::kEqual) {
      ++ties;
    }
  }
  EXPECT_EQ(ties, 1);
}

TEST(BuildModel, InvalidConfigThrows) {
  auto inst = testing::TwoIntervalExample();
  inst.tree.da_prob = {0.7};
  EXPECT_THROW(BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive),
               ValidationError);
  inst = testing::TwoIntervalExample();
  inst.config.horizon = 0;
  EXPECT_THROW(BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive),
               ValidationError);
}

TEST(EliminateRedundantBinaries, GuardsOnCommitmentParameters) {
  auto inst = testing::TwoIntervalExample();
  inst.config.thermal.fixed_cost = 10;
  const auto with_cost =
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive);
  const auto kept = EliminateRedundantBinaries(with_cost, inst.config);
  EXPECT_EQ(kept.model, with_cost.model);
  EXPECT_TRUE(kept.index.has_commitment());

  inst = testing::TwoIntervalExample();
  inst.config.thermal.min_output = 5;
  const auto with_min =
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive);
  EXPECT_EQ(EliminateRedundantBinaries(with_min, inst.config).model,
            with_min.model);
}

TEST(SolveStrategy, ActivePassiveDecisions) {
  const auto inst = testing::TwoIntervalExample();
  const StrategyResult r =
      SolveStrategy(inst.config, inst.tree, StrategyMode::kActivePassive);
  ASSERT_EQ(r.status, MilpStatus::kOptimal);
  ASSERT_TRUE(r.solution);
  const auto& s = *r.solution;
  const auto& x = r.offer.index;
  EXPECT_NEAR(s.objective, 702.25, 1e-6);
  EXPECT_NEAR(s.Value(x.QDa(0, 0)), 18, 1e-6);
  EXPECT_NEAR(s.Value(x.QDa(0, 1)), 34, 1e-6);
  EXPECT_EQ(s.Value(x.Eps(0, 0)), 0.0);
  EXPECT_EQ(s.Value(x.Eps(0, 1)), 1.0);
  EXPECT_NEAR(s.Value(x.QDw(0, 0, 1)), 19, 1e-6);
  EXPECT_NEAR(s.Value(x.QMinus(0, 0, 0)), 13, 1e-6);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(s.Value(x.QUp(0, j, k)), 0, 1e-6);
      if (j != 0 || k != 1) {
        EXPECT_NEAR(s.Value(x.QDw(0, j, k)), 0, 1e-6);
      }
    }
  }
  for (int w = 0; w < 2; ++w) {
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(s.Value(x.QPlus(0, w, k)), 0, 1e-6);
      if (w != 0 || k != 0) {
        EXPECT_NEAR(s.Value(x.QMinus(0, w, k)), 0, 1e-6);
      }
    }
  }
  // Interval 1 as in the passive case; interval 2 adds 19 MWh sold day-ahead
  // at 29, produced only under j2 and bought back at 19 under j1.
  EXPECT_NEAR(s.rho_da[0], 450, 1e-6);
  EXPECT_NEAR(s.rho_pas[0], -165.75, 1e-6);
  EXPECT_NEAR(s.rho_da[1], 29 * 34, 1e-6);
  EXPECT_NEAR(s.rho_act[1], -180.5, 1e-6);
  EXPECT_NEAR(s.cost[1], 93 + 294.5, 1e-6);
  EXPECT_NEAR(s.rho_da[1] + s.rho_act[1] - s.cost[1] - (435 - 93), 76, 1e-6);
}

TEST(SolveStrategy, PassiveDecisions) {
  const auto inst = testing::TwoIntervalExample();
  const auto s = SolveOrDie(inst, StrategyMode::kPassiveOnly);
  const VariableIndex x(1, 2, 2, 2, false);
  EXPECT_NEAR(s.objective, 626.25, 1e-6);
  EXPECT_NEAR(s.Value(x.QDa(0, 0)), 18, 1e-6);
  EXPECT_NEAR(s.Value(x.QDa(0, 1)), 15, 1e-6);
  EXPECT_NEAR(s.Value(x.QMinus(0, 0, 0)), 13, 1e-6);
  EXPECT_NEAR(s.Value(x.QMinus(0, 0, 1)), 0, 1e-6);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      EXPECT_EQ(s.Value(x.QUp(0, j, k)), 0.0);
      EXPECT_EQ(s.Value(x.QDw(0, j, k)), 0.0);
    }
  }
  EXPECT_NEAR(s.rho_da[0] + s.rho_pas[0] - s.cost[0], 284.25, 1e-6);
  EXPECT_NEAR(s.rho_da[1], 435, 1e-6);
  EXPECT_NEAR(s.cost[1], 93, 1e-6);
}

TEST(SolveStrategy, ActiveOnlyNoBetterThanActivePassive) {
  const auto inst = testing::TwoIntervalExample();
  const auto active = SolveOrDie(inst, StrategyMode::kActiveOnly);
  EXPECT_LE(active.objective, 702.25 + 1e-6);
  for (int w = 0; w < 2; ++w) {
    for (int k = 0; k < 2; ++k) {
      const VariableIndex x(1, 2, 2, 2, false);
      EXPECT_EQ(active.Value(x.QPlus(0, w, k)), 0.0);
      EXPECT_EQ(active.Value(x.QMinus(0, w, k)), 0.0);
    }
  }
}

TEST(SolveStrategy, ZeroPriceTreeGivesZero) {
  testing::Instance inst = testing::TwoIntervalExample();
  inst.tree.da_prices = {{0, 0}};
  inst.tree.ba_prices = {{{0, 0}, {0, 0}}};
  inst.tree.energy = {{0, 0}, {0, 0}};
  for (const auto mode :
       {StrategyMode::kActivePassive, StrategyMode::kPassiveOnly}) {
    const auto s = SolveOrDie(inst, mode);
    EXPECT_NEAR(s.objective, 0.0, 1e-9);
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(s.rho_da[k], 0.0, 1e-9);
      EXPECT_NEAR(s.rho_act[k], 0.0, 1e-9);
      EXPECT_NEAR(s.rho_pas[k], 0.0, 1e-9);
      EXPECT_NEAR(s.cost[k], 0.0, 1e-9);
    }
  }
}

TEST(ExtractSolution, RejectsFractionalBinary) {
  const auto inst = testing::TwoIntervalExample();
  const auto offer = EliminateRedundantBinaries(
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive),
      inst.config);
  const auto milp = milp::SolveMilp(offer.model);
  ASSERT_EQ(milp.status, MilpStatus::kOptimal);
  milp::LpSolution raw = milp.solution;
  raw.values[offer.index.Eps(0, 1)] = 0.5;
  EXPECT_THROW(ExtractSolution(offer, raw, inst.tree, inst.config),
               ExtractionError);
}

TEST(ExtractSolution, RejectsObjectiveMismatch) {
  const auto inst = testing::TwoIntervalExample();
  const auto offer = EliminateRedundantBinaries(
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive),
      inst.config);
  milp::LpSolution raw = milp::SolveMilp(offer.model).solution;
  raw.objective += 1.0;
  EXPECT_THROW(ExtractSolution(offer, raw, inst.tree, inst.config),
               ExtractionError);
}

TEST(ExtractSolution, SnapsNearIntegralBinaries) {
  const auto inst = testing::TwoIntervalExample();
  const auto offer = EliminateRedundantBinaries(
      BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive),
      inst.config);
  milp::LpSolution raw = milp::SolveMilp(offer.model).solution;
  raw.values[offer.index.Eps(0, 1)] = 1.0 - 1e-8;
  const auto s = ExtractSolution(offer, raw, inst.tree, inst.config);
  EXPECT_EQ(s.Value(offer.index.Eps(0, 1)), 1.0);
}

TEST(SolveStrategy, DecompositionSumsToObjective) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing::RandomInstance(rng, {});
    const auto s = SolveOrDie(inst, StrategyMode::kActivePassive);
    double sum = 0.0;
    for (int k = 0; k < inst.config.horizon; ++k) {
      sum += s.rho_da[k] + s.rho_act[k] + s.rho_pas[k] - s.cost[k];
    }
    EXPECT_NEAR(sum, s.objective, 1e-6);
  }
}

TEST(SolveStrategy, ModeDominanceOnRandomInstances) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 25; ++trial) {
    testing::RandomOptions options;
    options.horizon = 2 + trial % 3;
    options.allow_commitment = trial % 3 == 0;
    const auto inst = testing::RandomInstance(rng, options);
    const double both = SolveOrDie(inst, StrategyMode::kActivePassive).objective;
    const double passive =
        SolveOrDie(inst, StrategyMode::kPassiveOnly).objective;
    // Without passive deviations the renewable spread may exceed the
    // controllable flexibility; an infeasible benchmark is dominated trivially.
    const StrategyResult active =
        SolveStrategy(inst.config, inst.tree, StrategyMode::kActiveOnly);
    ASSERT_TRUE(active.status == MilpStatus::kOptimal ||
                active.status == MilpStatus::kInfeasible);
    EXPECT_GE(both, passive - 1e-6) << trial;
    if (active.solution) {
      EXPECT_GE(both, active.solution->objective - 1e-6) << trial;
    }
  }
}

TEST(EliminateRedundantBinaries, ObjectiveNeutral) {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    testing::RandomOptions options;
    options.num_da = 1;
    options.horizon = 2 + trial % 3;
    options.num_energy = 1 + (trial / 3) % 2;
    options.num_ba = 1 + (trial / 6) % 2;
    const auto inst = testing::RandomInstance(rng, options);
    const auto full =
        BuildModel(inst.config, inst.tree, StrategyMode::kActivePassive);
    if (full.model.num_binaries() > 12) continue;
    const auto reduced = EliminateRedundantBinaries(full, inst.config);
    ASSERT_LT(reduced.model.num_binaries(), full.model.num_binaries());
    const auto a = testing::EnumerateBinaries(full.model);
    const auto b = milp::SolveMilp(reduced.model);
    ASSERT_TRUE(a.objective);
    ASSERT_EQ(b.status, MilpStatus::kOptimal);
    EXPECT_NEAR(*a.objective, b.solution.objective, 1e-6) << trial;
    ++checked;
  }
  EXPECT_GE(checked, 25);
}

TEST(SolveStrategy, SolutionsSatisfyInvariants) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    testing::RandomOptions options;
    options.horizon = 2 + trial % 4;
    options.allow_commitment = trial % 2 == 0;
    const auto inst = testing::RandomInstance(rng, options);
    for (const auto mode :
         {StrategyMode::kActivePassive, StrategyMode::kActiveOnly,
          StrategyMode::kPassiveOnly}) {
      const StrategyResult r = SolveStrategy(inst.config, inst.tree, mode);
      if (mode == StrategyMode::kActiveOnly &&
          r.status == MilpStatus::kInfeasible) {
        continue;
      }
      ASSERT_EQ(r.status, MilpStatus::kOptimal);
      const auto report = testing::CheckInvariants(
          inst.config, inst.tree, r.offer.index, r.solution->values, mode);
      EXPECT_TRUE(report.ok()) << "trial " << trial << "\n"
                               << report.Summary();
      EXPECT_NEAR(ExpectedRealizedProfit(inst.config, inst.tree, r.offer.index,
                                         *r.solution),
                  r.solution->objective, 1e-6);
    }
  }
}

TEST(SolveStrategy, Deterministic) {
  const auto inst = testing::SyntheticCaseStudy(2, 2, 2, 11, 6);
  const auto a = SolveOrDie(inst, StrategyMode::kActivePassive);
  const auto b = SolveOrDie(inst, StrategyMode::kActivePassive);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
}

}  // namespace
}  // namespace vppbid
