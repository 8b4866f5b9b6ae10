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

// Views of a solved offer model in settlement terms: per-path decisions,
// expected ex-post profit, offer curves and active probabilities.

#ifndef VPPBID_STRATEGY_REPORT_H_
#define VPPBID_STRATEGY_REPORT_H_

#include <vector>

#include "vppbid/market_model.h"
#include "vppbid/offer_optimizer.h"
#include "vppbid/settlement.h"

namespace vppbid {

// Without commitment columns the unit counts as on whenever d > 0.
PathDecisions DecisionsForPath(const VariableIndex& index,
                               const StrategySolution& solution,
                               const ScenarioTree& tree, int i, int j, int w);

PathPrices PricesForPath(const ScenarioTree& tree, int i, int j);

// sum over paths of pi_i pi_ij pi_w RealizedProfit(path).
double ExpectedRealizedProfit(const VppConfig& config, const ScenarioTree& tree,
                              const VariableIndex& index,
                              const StrategySolution& solution);

// One day-ahead curve per interval, then for each (i, k) the up- and
// down-regulation curves over the balancing scenarios of i.
std::vector<OfferCurve> CurvesFromSolution(const VariableIndex& index,
                                           const StrategySolution& solution,
                                           const ScenarioTree& tree);

std::vector<std::vector<double>> EpsFromSolution(
    const VariableIndex& index, const StrategySolution& solution);

}  // namespace vppbid

#endif  // VPPBID_STRATEGY_REPORT_H_
