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

#ifndef VPPBID_BRANCH_AND_BOUND_H_
#define VPPBID_BRANCH_AND_BOUND_H_

#include <cstdint>
#include <string_view>

#include "vppbid/lp_solver.h"
#include "vppbid/milp_model.h"

namespace vppbid::milp {

enum class BranchingRule {
  // Most fractional binary, ties by lowest column id.
  kMostFractional,
  // Pseudo-cost branching; candidates whose pseudo-costs rest on fewer than
  // `reliability` observations per direction are strong-branched first.
  kReliability,
};

struct MilpLimits {
  std::int64_t max_nodes = 10'000'000;
  double max_seconds = kInfinity;
  double gap_target = kRelativeGapTarget;
  double integrality_tolerance = kIntegralityTolerance;
  double feasibility_tolerance = kFeasibilityTolerance;
  BranchingRule branching = BranchingRule::kReliability;
  int reliability = 2;
  // Strong-branching evaluations per node, and how many evaluations in a row
  // may fail to improve the best score before the node stops looking.
  int max_strong_candidates = 12;
  int strong_lookahead = 4;
  // All-zero and all-one fixings, root rounding, and a one-flip local search
  // around every new incumbent.
  bool heuristics = true;
  int local_search_passes = 3;
};

enum class MilpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  // A node or time limit stopped the search; the incumbent is returned.
  kLimitWithIncumbent,
  // A limit stopped the search before any integer solution was found.
  kNoIncumbent,
  kNumericalFailure,
};

std::string_view ToString(MilpStatus status);

struct BnbStats {
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  double incumbent = -kInfinity;
  double best_bound = kInfinity;
  // (best_bound - incumbent) / max(1, |incumbent|).
  double gap = kInfinity;
  double seconds = 0.0;
  double root_bound = kInfinity;
  int numerical_failures = 0;
  std::int64_t strong_branching_lps = 0;
  std::int64_t heuristic_lps = 0;
  // Binaries fixed at the root by reduced-cost arguments.
  int root_fixings = 0;
};

struct MilpResult {
  MilpStatus status = MilpStatus::kNumericalFailure;
  // Incumbent; `solution.status` is kOptimal whenever an incumbent exists.
  LpSolution solution;
  BnbStats stats;
};

double RelativeGap(double bound, double incumbent);

// Branch-and-bound over the binary columns of `model` with LP relaxations.
// Every non-binary column is treated as continuous.
//
// Node selection plunges depth first until the first incumbent and then
// switches to best bound (ties: lowest node id). Child LPs are warm-started
// from the parent's optimal basis. Binaries whose reduced cost proves that
// flipping them cannot beat the incumbent are fixed for the subtree. The
// search is single-threaded and deterministic for a given model and limits,
// unless the time limit is hit.
MilpResult SolveMilp(const MilpModel& model, const MilpLimits& limits = {});

}  // namespace vppbid::milp

#endif  // VPPBID_BRANCH_AND_BOUND_H_
