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

// Exhaustive reference computations used to cross-check the solvers.

#ifndef VPPBID_TESTS_SUPPORT_ORACLES_H_
#define VPPBID_TESTS_SUPPORT_ORACLES_H_

#include <optional>
#include <vector>

#include "vppbid/milp_model.h"
#include "vppbid/scenario_engine.h"

namespace vppbid::testing {

struct EnumerationResult {
  // Empty when every binary fixing is infeasible.
  std::optional<double> objective;
  int leaves = 0;
  int feasible_leaves = 0;
};

// Fixes every binary column to each of its 2^B values and solves the LP of
// the remaining continuous problem. Requires B <= 20.
EnumerationResult EnumerateBinaries(const milp::MilpModel& model);

// Sum over s not in `keep` of w_s * min_{t in keep} dist(s, t).
double KeepSetCost(const scenario::TrajectorySet& set,
                   const std::vector<int>& keep);

struct KeepSetOptimum {
  double cost = 0.0;
  // Every keep set reaching the optimum, each sorted ascending.
  std::vector<std::vector<int>> argmin;
};

// Minimum KeepSetCost over all subsets of size `target`.
KeepSetOptimum BruteForceKeepSet(const scenario::TrajectorySet& set,
                                 int target);

}  // namespace vppbid::testing

#endif  // VPPBID_TESTS_SUPPORT_ORACLES_H_
