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

namespace vppbid {

PathDecisions DecisionsForPath(const VariableIndex& index,
                               const StrategySolution& solution,
                               const ScenarioTree& tree, int i, int j, int w) {
  const int horizon = index.horizon();
  PathDecisions out;
  for (int k = 0; k < horizon; ++k) {
    out.q_da.push_back(solution.Value(index.QDa(i, k)));
    out.q_up.push_back(solution.Value(index.QUp(i, j, k)));
    out.q_dw.push_back(solution.Value(index.QDw(i, j, k)));
    out.q_plus.push_back(solution.Value(index.QPlus(i, w, k)));
    out.q_minus.push_back(solution.Value(index.QMinus(i, w, k)));
    const double d = solution.Value(index.Thermal(i, j, w, k));
    out.thermal.push_back(d);
    out.commitment.push_back(index.has_commitment()
                                 ? solution.Value(index.Commit(i, j, w, k))
                                 : (d > 0.0 ? 1.0 : 0.0));
    out.charge.push_back(solution.Value(index.Charge(i, j, w, k)));
    out.discharge.push_back(solution.Value(index.Discharge(i, j, w, k)));
    out.energy.push_back(tree.energy[w][k]);
  }
  return out;
}

PathPrices PricesForPath(const ScenarioTree& tree, int i, int j) {
  return {tree.da_prices[i], tree.ba_prices[i][j]};
}

double ExpectedRealizedProfit(const VppConfig& config, const ScenarioTree& tree,
                              const VariableIndex& index,
                              const StrategySolution& solution) {
  double total = 0.0;
  for (int i = 0; i < index.num_day_ahead(); ++i) {
    for (int j = 0; j < index.num_balancing(); ++j) {
      for (int w = 0; w < index.num_energy(); ++w) {
        const double p =
            tree.da_prob[i] * tree.ba_prob[i][j] * tree.energy_prob[w];
        total += p * RealizedProfit(config,
                                    DecisionsForPath(index, solution, tree, i,
                                                     j, w),
                                    PricesForPath(tree, i, j))
                         .total;
      }
    }
  }
  return total;
}

std::vector<OfferCurve> CurvesFromSolution(const VariableIndex& index,
                                           const StrategySolution& solution,
                                           const ScenarioTree& tree) {
  std::vector<OfferCurve> out;
  const int horizon = index.horizon();
  for (int k = 0; k < horizon; ++k) {
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < index.num_day_ahead(); ++i) {
      pairs.emplace_back(tree.da_prices[i][k],
                         solution.Value(index.QDa(i, k)));
    }
    out.push_back(BuildOfferCurve(std::move(pairs), Market::kDayAhead, k));
  }
  for (int i = 0; i < index.num_day_ahead(); ++i) {
    for (int k = 0; k < horizon; ++k) {
      std::vector<std::pair<double, double>> up;
      std::vector<std::pair<double, double>> down;
      for (int j = 0; j < index.num_balancing(); ++j) {
        const double price = tree.ba_prices[i][j][k];
        up.emplace_back(price, solution.Value(index.QUp(i, j, k)));
        down.emplace_back(price, solution.Value(index.QDw(i, j, k)));
      }
      out.push_back(BuildOfferCurve(std::move(up), Market::kUpRegulation, k));
      out.back().scenario = i;
      out.push_back(
          BuildOfferCurve(std::move(down), Market::kDownRegulation, k));
      out.back().scenario = i;
    }
  }
  return out;
}

std::vector<std::vector<double>> EpsFromSolution(
    const VariableIndex& index, const StrategySolution& solution) {
  std::vector<std::vector<double>> out(index.num_day_ahead());
  for (int i = 0; i < index.num_day_ahead(); ++i) {
    for (int k = 0; k < index.horizon(); ++k) {
      out[i].push_back(solution.Value(index.Eps(i, k)));
    }
  }
  return out;
}

}  // namespace vppbid
