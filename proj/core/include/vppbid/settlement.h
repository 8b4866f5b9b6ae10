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

// Dual-price imbalance settlement, offer curves and ex-post accounting.
//
// A positive deviation is paid min(DA, BA) and a negative one is charged
// max(DA, BA). Regulation offers clear by merit order against the balancing
// price; day-ahead offers against the day-ahead price.

#ifndef VPPBID_SETTLEMENT_H_
#define VPPBID_SETTLEMENT_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vppbid/market_model.h"

namespace vppbid {

struct ImbalancePrices {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

ImbalancePrices ComputeImbalancePrices(double da_price, double ba_price);

enum class Market { kDayAhead, kUpRegulation, kDownRegulation };

std::string_view ToString(Market market);

class CurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurveStep {
  double price = 0.0;
  // Quantity offered up to and including this price point.
  double quantity = 0.0;
};

struct OfferCurve {
  Market market = Market::kDayAhead;
  int interval = 0;
  // Day-ahead scenario a regulation curve is conditioned on; -1 otherwise.
  int scenario = -1;
  // Strictly increasing prices.
  std::vector<CurveStep> steps;
};

inline constexpr double kCurveTolerance = 1e-6;
// Prices closer than this are one step.
inline constexpr double kCurvePriceTolerance = 1e-9;

// Sorts `pairs` (price, quantity) by price and collapses equal prices.
// Throws CurveError when quantities at equal prices differ, or when the
// quantities break the market's monotonicity, by more than kCurveTolerance.
OfferCurve BuildOfferCurve(std::vector<std::pair<double, double>> pairs,
                           Market market, int interval = 0);

// Day-ahead and up-regulation: quantity of the highest step priced at or
// below `realized_price`. Down-regulation: quantity of the lowest step priced
// at or above it. Zero when no step is accepted.
double DispatchFromCurve(const OfferCurve& curve, double realized_price);

// Per-interval sum_i pi_i eps[i][k]; eps must be 0/1.
std::vector<double> ActiveProbability(
    const std::vector<std::vector<double>>& eps,
    const std::vector<double>& da_prob);

// Decisions and realizations along one path (i, j, w) of the tree, per interval.
struct PathDecisions {
  std::vector<double> q_da;
  std::vector<double> q_up;
  std::vector<double> q_dw;
  std::vector<double> q_plus;
  std::vector<double> q_minus;
  std::vector<double> thermal;
  std::vector<double> commitment;
  std::vector<double> charge;
  std::vector<double> discharge;
  std::vector<double> energy;
};

struct PathPrices {
  std::vector<double> day_ahead;
  std::vector<double> balancing;
};

class AccountingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kBalanceTolerance = 1e-6;

struct PathProfit {
  std::vector<double> per_interval;
  double total = 0.0;
};

// Cash flow of one path, settled from the decisions alone. Throws
// AccountingError when the decisions do not balance the market position
// against production in some interval.
PathProfit RealizedProfit(const VppConfig& config,
                          const PathDecisions& decisions,
                          const PathPrices& prices);

}  // namespace vppbid

#endif  // VPPBID_SETTLEMENT_H_
