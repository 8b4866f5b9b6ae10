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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace vppbid {

ImbalancePrices ComputeImbalancePrices(double da_price, double ba_price) {
  return {std::min(da_price, ba_price), std::max(da_price, ba_price)};
}

std::string_view ToString(Market market) {
  switch (market) {
    case Market::kDayAhead:
      return "DA";
    case Market::kUpRegulation:
      return "UP";
    case Market::kDownRegulation:
      return "DW";
  }
  return "unknown";
}

OfferCurve BuildOfferCurve(std::vector<std::pair<double, double>> pairs,
                           Market market, int interval) {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) {
                     return a.first < b.first;
                   });
  OfferCurve curve{market, interval, -1, {}};
  for (const auto& [price, quantity] : pairs) {
    if (!curve.steps.empty() &&
        price - curve.steps.back().price <= kCurvePriceTolerance) {
      if (std::abs(curve.steps.back().quantity - quantity) > kCurveTolerance) {
        throw CurveError(fmt::format(
            "{} curve at interval {}: price {} carries quantities {} and {}",
            ToString(market), interval, price, curve.steps.back().quantity,
            quantity));
      }
      continue;
    }
    if (!curve.steps.empty()) {
      const double previous = curve.steps.back().quantity;
      const bool broken = market == Market::kDownRegulation
                              ? quantity > previous + kCurveTolerance
                              : quantity < previous - kCurveTolerance;
      if (broken) {
        throw CurveError(fmt::format(
            "{} curve at interval {} is not monotone at price {}",
            ToString(market), interval, price));
      }
    }
    curve.steps.push_back({price, quantity});
  }
  return curve;
}

double DispatchFromCurve(const OfferCurve& curve, double realized_price) {
  const auto& steps = curve.steps;
  if (curve.market == Market::kDownRegulation) {
    const auto it = std::lower_bound(
        steps.begin(), steps.end(), realized_price,
        [](const CurveStep& s, double p) { return s.price < p; });
    return it == steps.end() ? 0.0 : it->quantity;
  }
  const auto it = std::upper_bound(
      steps.begin(), steps.end(), realized_price,
      [](double p, const CurveStep& s) { return p < s.price; });
  return it == steps.begin() ? 0.0 : std::prev(it)->quantity;
}

std::vector<double> ActiveProbability(
    const std::vector<std::vector<double>>& eps,
    const std::vector<double>& da_prob) {
  std::vector<double> out;
  for (size_t i = 0; i < eps.size(); ++i) {
    if (out.size() < eps[i].size()) out.resize(eps[i].size(), 0.0);
    for (size_t k = 0; k < eps[i].size(); ++k) {
      out[k] += da_prob.at(i) * eps[i][k];
    }
  }
  return out;
}

PathProfit RealizedProfit(const VppConfig& config,
                          const PathDecisions& d, const PathPrices& prices) {
  const size_t horizon = d.q_da.size();
  PathProfit out;
  out.per_interval.assign(horizon, 0.0);
  auto at = [](const std::vector<double>& v, size_t k) {
    return v.empty() ? 0.0 : v.at(k);
  };
  for (size_t k = 0; k < horizon; ++k) {
    const double position = d.q_da[k] + at(d.q_up, k) - at(d.q_dw, k) +
                            at(d.q_plus, k) - at(d.q_minus, k);
    const double production = at(d.energy, k) + at(d.thermal, k) +
                              at(d.discharge, k) - at(d.charge, k);
    if (std::abs(position - production) > kBalanceTolerance) {
      throw AccountingError(fmt::format(
          "interval {}: market position {} differs from production {}", k + 1,
          position, production));
    }
    const double da = prices.day_ahead.at(k);
    const double ba = prices.balancing.at(k);
    const ImbalancePrices imbalance = ComputeImbalancePrices(da, ba);
    const double cost = config.thermal.fixed_cost * at(d.commitment, k) +
                        config.thermal.marginal_cost * at(d.thermal, k);
    out.per_interval[k] = da * d.q_da[k] +
                          ba * (at(d.q_up, k) - at(d.q_dw, k)) +
                          imbalance.lambda_plus * at(d.q_plus, k) -
                          imbalance.lambda_minus * at(d.q_minus, k) - cost;
    out.total += out.per_interval[k];
  }
  return out;
}

}  // namespace vppbid
