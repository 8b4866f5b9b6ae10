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

// Bounded-variable revised primal simplex.
//
// Every row i gets a logical variable r_i = a_i x whose bounds encode the row
// sense, so the working system is [A -I] (x, r) = 0 with box bounds on all
// n + m variables. The basis is kept as a sparse LU factorization of the
// basis matrix plus a product-form eta file, refactorized periodically.
//
// Phase 1 minimizes the sum of bound infeasibilities of the basic variables;
// phase 2 maximizes the model objective. Pricing is Dantzig's rule with a
// Harris two-pass ratio test; after `stall_threshold` iterations without
// progress the solver switches to Bland's smallest-index rule until the
// objective moves again.
//
// A warm-start basis that is primal infeasible (typically a parent basis
// after a branching bound change) is first reoptimized by a dual simplex
// with a Harris ratio test; the primal method then confirms optimality or
// takes over.

#ifndef VPPBID_LP_SOLVER_H_
#define VPPBID_LP_SOLVER_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "vppbid/milp_model.h"

namespace vppbid::milp {

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kNumericalFailure,
  kIterationLimit,
};

std::string_view ToString(LpStatus status);

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Variables 0..n-1 are the model columns, n..n+m-1 the row logicals.
struct Basis {
  std::vector<int> basic;
  std::vector<VarStatus> status;

  bool empty() const { return basic.empty() && status.empty(); }
};

struct LpOptions {
  double feasibility_tolerance = kFeasibilityTolerance;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int max_iterations = 2'000'000;
  int refactor_interval = 100;
  int stall_threshold = 50;
  // Reoptimize a warm-start basis that lost primal feasibility with the dual
  // simplex before falling back to the primal method.
  bool dual_warm_start = true;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> values;
  double objective = 0.0;
  // Marginal objective change per unit increase of each row's rhs.
  std::vector<double> duals;
  // c_j - duals^T a_j for each column.
  std::vector<double> reduced_costs;
  int iterations = 0;
  Basis basis;
};

// Reusable solver bound to one model's constraint matrix. Column bounds can be
// overridden per call, which is how branch-and-bound nodes are evaluated.
class LpSolver {
 public:
  explicit LpSolver(const MilpModel& model);
  ~LpSolver();
  LpSolver(LpSolver&&) noexcept;
  LpSolver& operator=(LpSolver&&) noexcept;

  // Solves with the model's own column bounds.
  LpSolution Solve(const LpOptions& options = {});
  LpSolution Solve(std::span<const double> lower, std::span<const double> upper,
                   const Basis* warm_start, const LpOptions& options = {});

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// Solves the LP relaxation of `model` (integrality ignored).
LpSolution SolveLp(const MilpModel& model, const LpOptions& options = {});

}  // namespace vppbid::milp

#endif  // VPPBID_LP_SOLVER_H_
