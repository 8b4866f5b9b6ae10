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

#include "vppbid/settlement.h"

#include <random>

#include <gtest/gtest.h>

#include "instances.h"

namespace vppbid {
namespace {

// Step-function value evaluated directly from the pairs: the largest
// quantity whose price is accepted at `realized`.
double HandDispatch(const std::vector<std::pair<double, double>>& pairs,
                    Market market, double realized) {
  double best_price = 0.0;
  double quantity = 0.0;
  bool found = false;
  for (const auto& [price, q] : pairs) {
    const bool accepted = market == Market::kDownRegulation ? price >= realized
                                                            : price <= realized;
    if (!accepted) continue;
    const bool better = market == Market::kDownRegulation ? price < best_price
                                                          : price > best_price;
    if (!found || better) {
      best_price = price;
      quantity = q;
      found = true;
    }
  }
  return quantity;
}

TEST(ImbalancePrices, TableRows) {
  struct Row {
    double da, ba, plus, minus;
  };
  // Interval 1: DA 25, BA (26, 23); interval 2: DA 29, BA (19, 37).
  const Row rows[] = {{25, 26, 25, 26}, {25, 23, 23, 25},
                      {29, 19, 19, 29}, {29, 37, 29, 37}};
  for (const Row& r : rows) {
    const ImbalancePrices p = ComputeImbalancePrices(r.da, r.ba);
    EXPECT_EQ(p.lambda_plus, r.plus);
    EXPECT_EQ(p.lambda_minus, r.minus);
  }
}

TEST(ImbalancePrices, EqualPrices) {
  const ImbalancePrices p = ComputeImbalancePrices(30, 30);
  EXPECT_EQ(p.lambda_plus, 30);
  EXPECT_EQ(p.lambda_minus, 30);
}

TEST(ImbalancePrices, SandwichOnRandomPairs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> price(-100.0, 300.0);
  for (int n = 0; n < 10000; ++n) {
    const double da = price(rng);
    const double ba = price(rng);
    const ImbalancePrices p = ComputeImbalancePrices(da, ba);
    ASSERT_LE(p.lambda_plus, da);
    ASSERT_LE(da, p.lambda_minus);
    ASSERT_LE(p.lambda_plus, p.lambda_minus);
  }
}

TEST(BuildOfferCurve, SinglePair) {
  const OfferCurve c = BuildOfferCurve({{25, 18}}, Market::kDayAhead);
  ASSERT_EQ(c.steps.size(), 1u);
  EXPECT_EQ(c.steps[0].price, 25);
  EXPECT_EQ(c.steps[0].quantity, 18);
  EXPECT_EQ(DispatchFromCurve(c, 25), 18);
  EXPECT_EQ(DispatchFromCurve(c, 100), 18);
  EXPECT_EQ(DispatchFromCurve(c, 24.99), 0);
}

TEST(BuildOfferCurve, TwoStepsDayAhead) {
  const std::vector<std::pair<double, double>> pairs = {{30, 10}, {20, 5}};
  const OfferCurve c = BuildOfferCurve(pairs, Market::kDayAhead);
  ASSERT_EQ(c.steps.size(), 2u);
  EXPECT_EQ(c.steps[0].price, 20);
  for (const double p : {0.0, 19.9, 20.0, 25.0, 30.0, 45.0}) {
    EXPECT_EQ(DispatchFromCurve(c, p), HandDispatch(pairs, Market::kDayAhead, p))
        << "price " << p;
  }
  EXPECT_EQ(DispatchFromCurve(c, 15), 0);
}

TEST(BuildOfferCurve, DuplicatesCollapse) {
  const OfferCurve c = BuildOfferCurve({{20, 5}, {20, 5}}, Market::kDayAhead);
  EXPECT_EQ(c.steps.size(), 1u);
}

TEST(BuildOfferCurve, TiedPricesWithDifferentQuantitiesFail) {
  EXPECT_THROW(BuildOfferCurve({{20, 5}, {20, 6}}, Market::kDayAhead),
               CurveError);
}

TEST(BuildOfferCurve, NonMonotoneFails) {
  EXPECT_THROW(BuildOfferCurve({{20, 5}, {30, 4}}, Market::kUpRegulation),
               CurveError);
  EXPECT_THROW(BuildOfferCurve({{20, 5}, {30, 6}}, Market::kDownRegulation),
               CurveError);
  EXPECT_NO_THROW(BuildOfferCurve({{20, 6}, {30, 5}}, Market::kDownRegulation));
}

TEST(DispatchFromCurve, UpRegulationMeritOrder) {
  const OfferCurve c = BuildOfferCurve({{26, 10}}, Market::kUpRegulation);
  EXPECT_EQ(DispatchFromCurve(c, 27), 10);
  EXPECT_EQ(DispatchFromCurve(c, 25), 0);
  EXPECT_EQ(DispatchFromCurve(c, 26), 10);
}

TEST(DispatchFromCurve, DownRegulationAcceptedAtEqualPrice) {
  const OfferCurve c = BuildOfferCurve({{19, 19}}, Market::kDownRegulation);
  EXPECT_EQ(DispatchFromCurve(c, 19), 19);
  EXPECT_EQ(DispatchFromCurve(c, 18), 19);
  EXPECT_EQ(DispatchFromCurve(c, 20), 0);
}

TEST(DispatchFromCurve, MatchesHandEvaluationAndIsMonotone) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> price(10, 40);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    for (const Market market : {Market::kDayAhead, Market::kUpRegulation,
                                Market::kDownRegulation}) {
      std::vector<double> prices;
      const int n = size(rng);
      for (int s = 0; s < n; ++s) prices.push_back(price(rng));
      std::sort(prices.begin(), prices.end());
      prices.erase(std::unique(prices.begin(), prices.end()), prices.end());
      std::vector<std::pair<double, double>> pairs;
      double q = 0.0;
      for (size_t s = 0; s < prices.size(); ++s) {
        q += size(rng);
        pairs.emplace_back(prices[s], q);
      }
      if (market == Market::kDownRegulation) {
        // Non-increasing in price.
        for (size_t s = 0; s < pairs.size() / 2; ++s) {
          std::swap(pairs[s].second, pairs[pairs.size() - 1 - s].second);
        }
      }
      std::shuffle(pairs.begin(), pairs.end(), rng);
      const OfferCurve curve = BuildOfferCurve(pairs, market);
      double previous = DispatchFromCurve(curve, 0.0);
      for (double p = 0.0; p <= 45.0; p += 0.5) {
        const double got = DispatchFromCurve(curve, p);
        ASSERT_EQ(got, HandDispatch(pairs, market, p));
        if (market == Market::kDownRegulation) {
          ASSERT_LE(got, previous + 1e-12);
        } else {
          ASSERT_GE(got, previous - 1e-12);
        }
        previous = got;
      }
    }
  }
}

TEST(ActiveProbability, AlwaysActive) {
  const auto p = ActiveProbability({{1, 1}, {1, 1}}, {0.3, 0.7});
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  EXPECT_NEAR(p[1], 1.0, 1e-12);
}

TEST(ActiveProbability, SingleScenario) {
  const auto p = ActiveProbability({{0, 1}}, {1.0});
  EXPECT_EQ(p, (std::vector<double>{0.0, 1.0}));
}

TEST(ActiveProbability, FourOfTenEquiprobable) {
  std::vector<std::vector<double>> eps(10, {0.0});
  for (int i = 0; i < 4; ++i) eps[i][0] = 1.0;
  const auto p = ActiveProbability(eps, std::vector<double>(10, 0.1));
  EXPECT_NEAR(p[0], 0.4, 1e-12);
}

TEST(RealizedProfit, PassivePathFirstInterval) {
  const auto ex = testing::TwoIntervalExample();
  PathDecisions d;
  d.q_da = {18};
  d.q_minus = {13};
  d.energy = {5};
  const PathProfit profit = RealizedProfit(ex.config, d, {{25}, {26}});
  EXPECT_DOUBLE_EQ(profit.total, 25 * 18 - 26 * 13);
  EXPECT_DOUBLE_EQ(profit.total, 112);
}

TEST(RealizedProfit, ExpectedPassiveProfitFirstInterval) {
  const auto ex = testing::TwoIntervalExample();
  double expected = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int w = 0; w < 2; ++w) {
      PathDecisions d;
      d.q_da = {18};
      d.q_minus = {w == 0 ? 13.0 : 0.0};
      d.energy = {ex.tree.energy[w][0]};
      const double ba = ex.tree.ba_prices[0][j][0];
      expected += 0.25 * RealizedProfit(ex.config, d, {{25}, {ba}}).total;
    }
  }
  EXPECT_NEAR(expected, 450 - 165.75, 1e-12);
  EXPECT_NEAR(expected, 284.25, 1e-12);
}

TEST(RealizedProfit, NullPath) {
  PathDecisions d;
  d.q_da = {0, 0};
  EXPECT_EQ(RealizedProfit(VppConfig{}, d, {{30, 40}, {20, 50}}).total, 0.0);
}

TEST(RealizedProfit, IncludesThermalCosts) {
  VppConfig config;
  config.thermal.capacity = 50;
  config.thermal.marginal_cost = 40;
  config.thermal.fixed_cost = 100;
  PathDecisions d;
  d.q_da = {10};
  d.thermal = {10};
  d.commitment = {1};
  const auto p = RealizedProfit(config, d, {{50}, {50}});
  EXPECT_DOUBLE_EQ(p.total, 500 - 400 - 100);
}

TEST(RealizedProfit, BalanceViolation) {
  PathDecisions d;
  d.q_da = {10};
  d.energy = {5};
  EXPECT_THROW(RealizedProfit(VppConfig{}, d, {{30}, {30}}), AccountingError);
}

TEST(RealizedProfit, RegulationAtBalancingPrice) {
  PathDecisions d;
  d.q_da = {10};
  d.q_dw = {4};
  d.energy = {6};
  d.charge = {0};
  const auto p = RealizedProfit(VppConfig{}, d, {{30}, {20}});
  EXPECT_DOUBLE_EQ(p.total, 300 - 80);
}

}  // namespace
}  // namespace vppbid
