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


#include "vppbid/strategy_report.h"

#include <random>

#include <gtest/gtest.h>

#include "instances.h"
#include "vppbid/settlement.h"

namespace vppbid {
namespace {

StrategyResult Solve(const testing::Instance& inst, StrategyMode mode) {
  StrategyResult r = SolveStrategy(inst.config, inst.tree, mode);
  EXPECT_EQ(r.status, milp::MilpStatus::kOptimal);
  EXPECT_TRUE(r.solution.has_value());
  return r;
}

TEST(DecisionsForPath, TwoIntervalActivePassivePath) {
  const auto inst = testing::TwoIntervalExample();
  const auto r = Solve(inst, StrategyMode::kActivePassive);
  const auto d =
      DecisionsForPath(r.offer.index, *r.solution, inst.tree, 0, 0, 0);
  EXPECT_NEAR(d.q_da[0], 18, 1e-6);
  EXPECT_NEAR(d.q_da[1], 34, 1e-6);
  EXPECT_NEAR(d.q_dw[1], 19, 1e-6);
  EXPECT_NEAR(d.q_minus[0], 13, 1e-6);
  EXPECT_NEAR(d.thermal[0], 0, 1e-6);
  // 34 sold, 19 bought back, 9 from wind: 6 from the thermal unit.
  EXPECT_NEAR(d.thermal[1], 6, 1e-6);
  EXPECT_EQ(d.energy, (std::vector<double>{5, 9}));
  EXPECT_EQ(d.commitment[0], 0.0);
  EXPECT_EQ(d.commitment[1], 1.0);

  const auto prices = PricesForPath(inst.tree, 0, 0);
  EXPECT_EQ(prices.day_ahead, (std::vector<double>{25, 29}));
  EXPECT_EQ(prices.balancing, (std::vector<double>{26, 19}));
  const auto profit = RealizedProfit(inst.config, d, prices);
  EXPECT_NEAR(profit.per_interval[0], 25 * 18 - 26 * 13, 1e-6);
  EXPECT_NEAR(profit.per_interval[1], 29 * 34 - 19 * 19 - 31 * 6, 1e-6);
}

TEST(ExpectedRealizedProfit, MatchesTwoIntervalObjectives) {
  const auto inst = testing::TwoIntervalExample();
  for (const auto& [mode, expected] :
       {std::pair{StrategyMode::kActivePassive, 702.25},
        std::pair{StrategyMode::kPassiveOnly, 626.25}}) {
    const auto r = Solve(inst, mode);
    EXPECT_NEAR(ExpectedRealizedProfit(inst.config, inst.tree, r.offer.index,
                                       *r.solution),
                expected, 1e-6);
  }
}

// Recomputes the expectation path by path with the settlement formula
// written out here rather than through RealizedProfit.
double HandExpectation(const testing::Instance& inst,
                       const StrategyResult& r) {
  const auto& t = inst.tree;
  const auto& c = inst.config;
  double total = 0.0;
  for (int i = 0; i < t.num_day_ahead(); ++i) {
    for (int j = 0; j < t.num_balancing(); ++j) {
      for (int w = 0; w < t.num_energy(); ++w) {
        const auto d = DecisionsForPath(r.offer.index, *r.solution, t, i, j, w);
        const double pi = t.da_prob[i] * t.ba_prob[i][j] * t.energy_prob[w];
        for (int k = 0; k < c.horizon; ++k) {
          const double da = t.da_prices[i][k];
          const double ba = t.ba_prices[i][j][k];
          const double plus = std::min(da, ba);
          const double minus = std::max(da, ba);
          total += pi * (da * d.q_da[k] + ba * (d.q_up[k] - d.q_dw[k]) +
                         plus * d.q_plus[k] - minus * d.q_minus[k] -
                         c.thermal.marginal_cost * d.thermal[k] -
                         c.thermal.fixed_cost * d.commitment[k]);
        }
      }
    }
  }
  return total;
}

TEST(ExpectedRealizedProfit, MatchesObjectiveOnRandomInstances) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    testing::RandomOptions options;
    options.allow_commitment = trial % 2 == 0;
    options.horizon = 2 + trial % 4;
    const auto inst = testing::RandomInstance(rng, options);
    const auto r = Solve(inst, StrategyMode::kActivePassive);
    const double expected = ExpectedRealizedProfit(
        inst.config, inst.tree, r.offer.index, *r.solution);
    EXPECT_NEAR(expected, r.solution->objective, 1e-6) << trial;
    EXPECT_NEAR(HandExpectation(inst, r), r.solution->objective, 1e-6);
  }
}

TEST(CurvesFromSolution, TwoIntervalCurves) {
  const auto inst = testing::TwoIntervalExample();
  const auto r = Solve(inst, StrategyMode::kActivePassive);
  const auto curves = CurvesFromSolution(r.offer.index, *r.solution, inst.tree);
  // Two day-ahead curves, then up and down for each interval of i = 0.
  ASSERT_EQ(curves.size(), 6u);
  EXPECT_EQ(curves[0].market, Market::kDayAhead);
  ASSERT_EQ(curves[0].steps.size(), 1u);
  EXPECT_EQ(curves[0].steps[0].price, 25);
  EXPECT_NEAR(curves[0].steps[0].quantity, 18, 1e-6);
  EXPECT_EQ(curves[1].interval, 1);
  EXPECT_NEAR(curves[1].steps[0].quantity, 34, 1e-6);

  const OfferCurve* down = nullptr;
  for (const auto& c : curves) {
    if (c.market == Market::kDownRegulation && c.interval == 1) down = &c;
  }
  ASSERT_NE(down, nullptr);
  EXPECT_EQ(down->scenario, 0);
  ASSERT_EQ(down->steps.size(), 2u);
  EXPECT_EQ(down->steps[0].price, 19);
  EXPECT_NEAR(down->steps[0].quantity, 19, 1e-6);
  EXPECT_NEAR(down->steps[1].quantity, 0, 1e-6);
  EXPECT_NEAR(DispatchFromCurve(*down, 19), 19, 1e-6);
  EXPECT_NEAR(DispatchFromCurve(*down, 37), 0, 1e-6);
}

TEST(CurvesFromSolution, CurvesAreMonotoneOnRandomInstances) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomOptions options;
    options.num_da = 3;
    const auto inst = testing::RandomInstance(rng, options);
    const auto r = Solve(inst, StrategyMode::kActivePassive);
    // BuildOfferCurve throws on broken monotonicity.
    const auto curves =
        CurvesFromSolution(r.offer.index, *r.solution, inst.tree);
    EXPECT_EQ(curves.size(),
              static_cast<size_t>(inst.config.horizon * (1 + 2 * 3)));
  }
}

TEST(EpsFromSolution, TwoIntervalActiveProbability) {
  const auto inst = testing::TwoIntervalExample();
  const auto r = Solve(inst, StrategyMode::kActivePassive);
  const auto eps = EpsFromSolution(r.offer.index, *r.solution);
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_EQ(eps[0], (std::vector<double>{0, 1}));
  EXPECT_EQ(ActiveProbability(eps, inst.tree.da_prob),
            (std::vector<double>{0, 1}));
}

}  // namespace
}  // namespace vppbid
