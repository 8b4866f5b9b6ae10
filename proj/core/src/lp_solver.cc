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

#include "vppbid/lp_solver.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace vppbid::milp {

std::string_view ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kNumericalFailure:
      return "numerical failure";
    case LpStatus::kIterationLimit:
      return "iteration limit";
  }
  return "unknown";
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Vector = Eigen::VectorXd;

// Entries below this magnitude are dropped from eta vectors.
constexpr double kDropTolerance = 1e-13;
// Resets to a slack basis before giving up on a singular factorization.
constexpr int kMaxBasisResets = 3;

struct Eta {
  int position = 0;
  double pivot = 1.0;
  std::vector<int> index;
  std::vector<double> value;
};

enum class BoundTarget : std::uint8_t { kLower, kUpper };

struct RatioResult {
  bool found = false;
  bool bound_flip = false;
  int position = -1;
  double step = 0.0;
  BoundTarget target = BoundTarget::kLower;
};

}  // namespace

class LpSolver::Impl {
 public:
  explicit Impl(const MilpModel& model);

  LpSolution Solve(std::span<const double> lower,
                   std::span<const double> upper, const Basis* warm_start,
                   const LpOptions& options);

  std::span<const double> column_lower() const { return column_lower_; }
  std::span<const double> column_upper() const { return column_upper_; }

 private:
  bool IsLogical(int var) const { return var >= n_; }
  double Cost(int var) const { return IsLogical(var) ? 0.0 : cost_[var]; }

  void LoadBounds(std::span<const double> lower, std::span<const double> upper);
  void SlackBasis();
  bool LoadWarmStart(const Basis& basis);
  void PlaceNonbasic(int var);
  bool Refactor();
  void ComputeBasicValues();
  void Ftran(Vector& v) const;
  void Btran(Vector& v) const;
  void LoadColumn(int var, Vector& v) const;
  double ColumnDot(int var, const Vector& pi) const;
  double BasicInfeasibility(int var) const;
  double SumInfeasibility() const;
  double PhaseTwoObjective() const;
  int Price(const Vector& pi, bool bland, double& reduced) const;
  RatioResult RatioTest(int entering, double direction, const Vector& alpha,
                        bool phase_one, bool bland) const;
  LpSolution Finish(LpStatus status, const Vector& pi, int iterations) const;

  enum class DualOutcome { kOptimal, kInfeasible, kAbandon };
  // Dual simplex from the loaded basis; any outcome leaves a valid basis for
  // the primal method to continue from.
  DualOutcome DualSimplex(int& iterations);
  void ComputeReducedCosts(Vector& pi, std::vector<double>& reduced) const;

  int n_ = 0;
  int m_ = 0;
  std::vector<double> cost_;
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> col_value_;
  std::vector<double> row_lower_;
  std::vector<double> row_upper_;
  std::vector<double> column_lower_;
  std::vector<double> column_upper_;

  LpOptions options_;
  double primal_tolerance_ = 1e-8;
  std::vector<double> lb_;
  std::vector<double> ub_;
  std::vector<double> x_;
  std::vector<VarStatus> status_;
  std::vector<int> basic_;
  std::vector<int> basic_position_;
  // transpose() is non-const in Eigen.
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

LpSolver::Impl::Impl(const MilpModel& model)
    : n_(model.num_columns()), m_(model.num_rows()) {
  cost_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    cost_[j] = -model.column(j).objective;
    column_lower_.push_back(model.column(j).lower);
    column_upper_.push_back(model.column(j).upper);
  }

  std::vector<int> count(n_ + 1, 0);
  for (const Row& r : model.rows()) {
    for (const RowEntry& e : r.entries) ++count[e.column + 1];
  }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j + 1];
  row_index_.resize(col_start_[n_]);
  col_value_.resize(col_start_[n_]);
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < m_; ++i) {
    const Row& r = model.row(i);
    for (const RowEntry& e : r.entries) {
      row_index_[fill[e.column]] = i;
      col_value_[fill[e.column]] = e.value;
      ++fill[e.column];
    }
    row_lower_.push_back(r.sense == RowSense::kLessEqual ? -kInfinity : r.rhs);
    row_upper_.push_back(r.sense == RowSense::kGreaterEqual ? kInfinity
                                                            : r.rhs);
  }
}

void LpSolver::Impl::LoadBounds(std::span<const double> lower,
                                std::span<const double> upper) {
  lb_.assign(n_ + m_, 0.0);
  ub_.assign(n_ + m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    lb_[j] = lower[j];
    ub_[j] = upper[j];
  }
  for (int i = 0; i < m_; ++i) {
    lb_[n_ + i] = row_lower_[i];
    ub_[n_ + i] = row_upper_[i];
  }
}

void LpSolver::Impl::PlaceNonbasic(int var) {
  VarStatus& s = status_[var];
  const bool has_lower = std::isfinite(lb_[var]);
  const bool has_upper = std::isfinite(ub_[var]);
  if (s == VarStatus::kAtUpper && has_upper) {
    x_[var] = ub_[var];
  } else if (has_lower) {
    s = VarStatus::kAtLower;
    x_[var] = lb_[var];
  } else if (has_upper) {
    s = VarStatus::kAtUpper;
    x_[var] = ub_[var];
  } else {
    s = VarStatus::kFree;
    x_[var] = 0.0;
  }
}

void LpSolver::Impl::SlackBasis() {
  status_.assign(n_ + m_, VarStatus::kAtLower);
  x_.assign(n_ + m_, 0.0);
  basic_.resize(m_);
  basic_position_.assign(n_ + m_, -1);
  for (int j = 0; j < n_; ++j) PlaceNonbasic(j);
  for (int i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    basic_position_[n_ + i] = i;
    status_[n_ + i] = VarStatus::kBasic;
  }
}

bool LpSolver::Impl::LoadWarmStart(const Basis& basis) {
  if (static_cast<int>(basis.basic.size()) != m_ ||
      static_cast<int>(basis.status.size()) != n_ + m_) {
    return false;
  }
  status_ = basis.status;
  basic_ = basis.basic;
  basic_position_.assign(n_ + m_, -1);
  x_.assign(n_ + m_, 0.0);
  for (int p = 0; p < m_; ++p) {
    const int var = basic_[p];
    if (var < 0 || var >= n_ + m_ || basic_position_[var] >= 0 ||
        status_[var] != VarStatus::kBasic) {
      return false;
    }
    basic_position_[var] = p;
  }
  for (int var = 0; var < n_ + m_; ++var) {
    if (basic_position_[var] < 0) {
      if (status_[var] == VarStatus::kBasic) return false;
      PlaceNonbasic(var);
    }
  }
  return true;
}

bool LpSolver::Impl::Refactor() {
  etas_.clear();
  if (m_ == 0) return true;
  std::vector<Eigen::Triplet<double>> triplets;
  for (int p = 0; p < m_; ++p) {
    const int var = basic_[p];
    if (IsLogical(var)) {
      triplets.emplace_back(var - n_, p, -1.0);
    } else {
      for (int t = col_start_[var]; t < col_start_[var + 1]; ++t) {
        triplets.emplace_back(row_index_[t], p, col_value_[t]);
      }
    }
  }
  SparseMatrix basis_matrix(m_, m_);
  basis_matrix.setFromTriplets(triplets.begin(), triplets.end());
  basis_matrix.makeCompressed();
  lu_.analyzePattern(basis_matrix);
  lu_.factorize(basis_matrix);
  return lu_.info() == Eigen::Success;
}

void LpSolver::Impl::LoadColumn(int var, Vector& v) const {
  v.setZero(m_);
  if (IsLogical(var)) {
    v[var - n_] = -1.0;
    return;
  }
  for (int t = col_start_[var]; t < col_start_[var + 1]; ++t) {
    v[row_index_[t]] = col_value_[t];
  }
}

double LpSolver::Impl::ColumnDot(int var, const Vector& pi) const {
  if (IsLogical(var)) return -pi[var - n_];
  double total = 0.0;
  for (int t = col_start_[var]; t < col_start_[var + 1]; ++t) {
    total += col_value_[t] * pi[row_index_[t]];
  }
  return total;
}

void LpSolver::Impl::Ftran(Vector& v) const {
  if (m_ == 0) return;
  v = lu_.solve(v);
  for (const Eta& eta : etas_) {
    const double pivot_value = v[eta.position] / eta.pivot;
    if (pivot_value == 0.0) continue;
    for (size_t t = 0; t < eta.index.size(); ++t) {
      if (eta.index[t] != eta.position) {
        v[eta.index[t]] -= eta.value[t] * pivot_value;
      }
    }
    v[eta.position] = pivot_value;
  }
}

void LpSolver::Impl::Btran(Vector& v) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double total = v[it->position];
    for (size_t t = 0; t < it->index.size(); ++t) {
      if (it->index[t] != it->position) total -= v[it->index[t]] * it->value[t];
    }
    v[it->position] = total / it->pivot;
  }
  v = lu_.transpose().solve(v);
}

void LpSolver::Impl::ComputeBasicValues() {
  if (m_ == 0) return;
  Vector rhs = Vector::Zero(m_);
  for (int j = 0; j < n_; ++j) {
    if (basic_position_[j] >= 0 || x_[j] == 0.0) continue;
    for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) {
      rhs[row_index_[t]] -= col_value_[t] * x_[j];
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (basic_position_[n_ + i] < 0) rhs[i] += x_[n_ + i];
  }
  Ftran(rhs);
  for (int p = 0; p < m_; ++p) x_[basic_[p]] = rhs[p];
}

double LpSolver::Impl::BasicInfeasibility(int var) const {
  if (x_[var] < lb_[var] - primal_tolerance_) return lb_[var] - x_[var];
  if (x_[var] > ub_[var] + primal_tolerance_) return x_[var] - ub_[var];
  return 0.0;
}

double LpSolver::Impl::SumInfeasibility() const {
  double total = 0.0;
  for (int p = 0; p < m_; ++p) total += BasicInfeasibility(basic_[p]);
  return total;
}

double LpSolver::Impl::PhaseTwoObjective() const {
  double total = 0.0;
  for (int j = 0; j < n_; ++j) total += cost_[j] * x_[j];
  return total;
}

int LpSolver::Impl::Price(const Vector& pi, bool bland,
                          double& reduced) const {
  const double tol = options_.optimality_tolerance;
  int best = -1;
  double best_score = 0.0;
  for (int var = 0; var < n_ + m_; ++var) {
    const VarStatus s = status_[var];
    if (s == VarStatus::kBasic || lb_[var] == ub_[var]) continue;
    const double d = Cost(var) - ColumnDot(var, pi);
    const bool eligible = (s == VarStatus::kAtLower && d < -tol) ||
                          (s == VarStatus::kAtUpper && d > tol) ||
                          (s == VarStatus::kFree && std::abs(d) > tol);
    if (!eligible) continue;
    if (bland) {
      reduced = d;
      return var;
    }
    if (std::abs(d) > best_score) {
      best_score = std::abs(d);
      best = var;
      reduced = d;
    }
  }
  return best;
}

RatioResult LpSolver::Impl::RatioTest(int entering, double direction,
                                      const Vector& alpha, bool phase_one,
                                      bool bland) const {
  const double harris = bland ? 0.0 : primal_tolerance_;
  struct Candidate {
    int position;
    double ratio;
    double relaxed;
    double magnitude;
    BoundTarget target;
  };
  std::vector<Candidate> candidates;
  for (int p = 0; p < m_; ++p) {
    const double a = alpha[p];
    if (std::abs(a) <= options_.pivot_tolerance) continue;
    const int var = basic_[p];
    const double rate = -direction * a;
    const double x = x_[var];
    const bool below = phase_one && x < lb_[var] - primal_tolerance_;
    const bool above = phase_one && x > ub_[var] + primal_tolerance_;
    std::optional<Candidate> c;
    if (below) {
      if (rate > 0.0) {
        c = Candidate{p, (lb_[var] - x) / rate, (lb_[var] - x + harris) / rate,
                      std::abs(a), BoundTarget::kLower};
      }
    } else if (above) {
      if (rate < 0.0) {
        c = Candidate{p, (x - ub_[var]) / -rate,
                      (x - ub_[var] + harris) / -rate, std::abs(a),
                      BoundTarget::kUpper};
      }
    } else if (rate < 0.0 && std::isfinite(lb_[var])) {
      c = Candidate{p, (x - lb_[var]) / -rate, (x - lb_[var] + harris) / -rate,
                    std::abs(a), BoundTarget::kLower};
    } else if (rate > 0.0 && std::isfinite(ub_[var])) {
      c = Candidate{p, (ub_[var] - x) / rate, (ub_[var] - x + harris) / rate,
                    std::abs(a), BoundTarget::kUpper};
    }
    if (c) candidates.push_back(*c);
  }

  RatioResult result;
  const double range = ub_[entering] - lb_[entering];
  const Candidate* chosen = nullptr;
  if (bland) {
    for (const Candidate& c : candidates) {
      if (chosen == nullptr || c.ratio < chosen->ratio - 1e-12 ||
          (c.ratio <= chosen->ratio + 1e-12 &&
           basic_[c.position] < basic_[chosen->position])) {
        chosen = &c;
      }
    }
  } else {
    double limit = kInfinity;
    for (const Candidate& c : candidates) limit = std::min(limit, c.relaxed);
    for (const Candidate& c : candidates) {
      if (c.ratio <= limit &&
          (chosen == nullptr || c.magnitude > chosen->magnitude)) {
        chosen = &c;
      }
    }
  }
  if (std::isfinite(range) &&
      (chosen == nullptr || range <= std::max(0.0, chosen->ratio))) {
    result.found = true;
    result.bound_flip = true;
    result.step = range;
    return result;
  }
  if (chosen == nullptr) return result;
  result.found = true;
  result.position = chosen->position;
  result.step = std::max(0.0, chosen->ratio);
  result.target = chosen->target;
  return result;
}

LpSolution LpSolver::Impl::Finish(LpStatus status, const Vector& pi,
                                  int iterations) const {
  LpSolution out;
  out.status = status;
  out.iterations = iterations;
  out.values.assign(x_.begin(), x_.begin() + n_);
  out.objective = 0.0;
  for (int j = 0; j < n_; ++j) out.objective -= cost_[j] * x_[j];
  if (status == LpStatus::kOptimal) {
    out.duals.resize(m_);
    for (int i = 0; i < m_; ++i) out.duals[i] = -pi[i];
    out.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) {
      out.reduced_costs[j] = -(cost_[j] - ColumnDot(j, pi));
    }
  }
  out.basis.basic = basic_;
  out.basis.status = status_;
  return out;
}

void LpSolver::Impl::ComputeReducedCosts(Vector& pi,
                                         std::vector<double>& reduced) const {
  pi.resize(m_);
  for (int p = 0; p < m_; ++p) pi[p] = Cost(basic_[p]);
  Btran(pi);
  reduced.assign(n_ + m_, 0.0);
  for (int var = 0; var < n_ + m_; ++var) {
    if (status_[var] != VarStatus::kBasic) {
      reduced[var] = Cost(var) - ColumnDot(var, pi);
    }
  }
}

LpSolver::Impl::DualOutcome LpSolver::Impl::DualSimplex(int& iterations) {
  const double dual_tol = options_.optimality_tolerance;
  const double pivot_tol = options_.pivot_tolerance;
  Vector pi(m_);
  Vector rho(m_);
  Vector alpha(m_);
  std::vector<double> d;
  ComputeReducedCosts(pi, d);

  // Boxed nonbasics with the wrong reduced-cost sign move to the other bound.
  bool moved = false;
  for (int var = 0; var < n_ + m_; ++var) {
    const VarStatus s = status_[var];
    if (s == VarStatus::kBasic || lb_[var] == ub_[var]) continue;
    if (s == VarStatus::kAtLower && d[var] < -dual_tol) {
      if (!std::isfinite(ub_[var])) return DualOutcome::kAbandon;
      status_[var] = VarStatus::kAtUpper;
      x_[var] = ub_[var];
      moved = true;
    } else if (s == VarStatus::kAtUpper && d[var] > dual_tol) {
      if (!std::isfinite(lb_[var])) return DualOutcome::kAbandon;
      status_[var] = VarStatus::kAtLower;
      x_[var] = lb_[var];
      moved = true;
    } else if (s == VarStatus::kFree && std::abs(d[var]) > dual_tol) {
      return DualOutcome::kAbandon;
    }
  }
  if (moved) ComputeBasicValues();

  struct Candidate {
    int var;
    double a;
  };
  std::vector<Candidate> candidates;
  // Nonzeros of the pivot row over the nonbasic variables.
  std::vector<Candidate> row;
  while (true) {
    if (iterations >= options_.max_iterations) return DualOutcome::kAbandon;
    if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
      if (!Refactor()) return DualOutcome::kAbandon;
      ComputeBasicValues();
      ComputeReducedCosts(pi, d);
    }
    int position = -1;
    double worst = 0.0;
    for (int p = 0; p < m_; ++p) {
      const double infeasibility = BasicInfeasibility(basic_[p]);
      if (infeasibility > worst) {
        worst = infeasibility;
        position = p;
      }
    }
    if (position < 0) return DualOutcome::kOptimal;
    const int leaving = basic_[position];
    const bool to_lower = x_[leaving] < lb_[leaving];

    rho.setZero(m_);
    rho[position] = 1.0;
    Btran(rho);
    candidates.clear();
    row.clear();
    double max_step = kInfinity;
    for (int var = 0; var < n_ + m_; ++var) {
      const VarStatus s = status_[var];
      if (s == VarStatus::kBasic || lb_[var] == ub_[var]) continue;
      const double a = ColumnDot(var, rho);
      if (a == 0.0) continue;
      row.push_back({var, a});
      if (std::abs(a) <= pivot_tol) continue;
      const bool increases = to_lower ? a < 0.0 : a > 0.0;
      const bool eligible = s == VarStatus::kFree ||
                            (s == VarStatus::kAtLower && increases) ||
                            (s == VarStatus::kAtUpper && !increases);
      if (!eligible) continue;
      candidates.push_back({var, a});
      max_step = std::min(max_step, (std::abs(d[var]) + dual_tol) /
                                        std::abs(a));
    }
    if (candidates.empty()) return DualOutcome::kInfeasible;
    int entering = -1;
    double entering_a = 0.0;
    double best_magnitude = 0.0;
    for (const Candidate& c : candidates) {
      if (std::abs(d[c.var]) / std::abs(c.a) <= max_step &&
          std::abs(c.a) > best_magnitude) {
        best_magnitude = std::abs(c.a);
        entering = c.var;
        entering_a = c.a;
      }
    }

    LoadColumn(entering, alpha);
    Ftran(alpha);
    if (std::abs(alpha[position]) <= pivot_tol) return DualOutcome::kAbandon;
    const double target = to_lower ? lb_[leaving] : ub_[leaving];
    const double delta = (x_[leaving] - target) / alpha[position];
    x_[entering] += delta;
    for (int p = 0; p < m_; ++p) {
      if (alpha[p] != 0.0) x_[basic_[p]] -= alpha[p] * delta;
    }
    x_[leaving] = target;
    status_[leaving] = to_lower ? VarStatus::kAtLower : VarStatus::kAtUpper;
    basic_position_[leaving] = -1;
    basic_[position] = entering;
    basic_position_[entering] = position;
    status_[entering] = VarStatus::kBasic;

    Eta eta;
    eta.position = position;
    eta.pivot = alpha[position];
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) > kDropTolerance || p == position) {
        eta.index.push_back(p);
        eta.value.push_back(alpha[p]);
      }
    }
    etas_.push_back(std::move(eta));
    ++iterations;
    const double theta = d[entering] / entering_a;
    for (const Candidate& c : row) d[c.var] -= theta * c.a;
    d[entering] = 0.0;
    d[leaving] = -theta;
  }
}

LpSolution LpSolver::Impl::Solve(std::span<const double> lower,
                                 std::span<const double> upper,
                                 const Basis* warm_start,
                                 const LpOptions& options) {
  options_ = options;
  primal_tolerance_ = options.feasibility_tolerance * 0.1;
  LoadBounds(lower, upper);
  for (int var = 0; var < n_ + m_; ++var) {
    if (lb_[var] > ub_[var]) {
      LpSolution out;
      out.status = LpStatus::kInfeasible;
      out.values.assign(n_, 0.0);
      return out;
    }
  }
  const bool warm = warm_start != nullptr && LoadWarmStart(*warm_start);
  if (!warm) SlackBasis();

  int resets = 0;
  auto refresh = [&]() {
    while (!Refactor()) {
      if (++resets > kMaxBasisResets) return false;
      SlackBasis();
    }
    ComputeBasicValues();
    return true;
  };

  Vector pi = Vector::Zero(m_);
  if (!refresh()) return Finish(LpStatus::kNumericalFailure, pi, 0);

  int dual_iterations = 0;
  bool fresh = true;
  if (warm && options_.dual_warm_start && resets == 0 &&
      SumInfeasibility() > 0.0) {
    // Outcomes other than optimal are re-examined by the primal method.
    DualSimplex(dual_iterations);
    fresh = etas_.empty();
  }

  bool bland = false;
  int stall = 0;
  int last_phase = 0;
  double last_measure = kInfinity;
  Vector alpha(m_);
  Vector basic_cost(m_);

  for (int iteration = dual_iterations;; ++iteration) {
    if (iteration >= options_.max_iterations) {
      return Finish(LpStatus::kIterationLimit, pi, iteration);
    }
    if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
      if (!refresh()) return Finish(LpStatus::kNumericalFailure, pi, iteration);
      fresh = true;
    }

    const double infeasibility = SumInfeasibility();
    const bool phase_one = infeasibility > 0.0;
    const int phase = phase_one ? 1 : 2;
    const double measure = phase_one ? infeasibility : PhaseTwoObjective();
    if (phase != last_phase) {
      stall = 0;
      bland = false;
    } else if (measure < last_measure - 1e-12 * (1.0 + std::abs(measure))) {
      stall = 0;
      bland = false;
    } else if (++stall >= options_.stall_threshold) {
      bland = true;
    }
    last_phase = phase;
    last_measure = measure;

    for (int p = 0; p < m_; ++p) {
      const int var = basic_[p];
      if (phase_one) {
        basic_cost[p] = x_[var] < lb_[var] - primal_tolerance_   ? -1.0
                        : x_[var] > ub_[var] + primal_tolerance_ ? 1.0
                                                                 : 0.0;
      } else {
        basic_cost[p] = Cost(var);
      }
    }
    pi = basic_cost;
    Btran(pi);

    double reduced = 0.0;
    int entering = -1;
    if (phase_one) {
      // Phase one prices against zero costs for nonbasic columns.
      const double tol = options_.optimality_tolerance;
      int best = -1;
      double best_score = 0.0;
      for (int var = 0; var < n_ + m_; ++var) {
        const VarStatus s = status_[var];
        if (s == VarStatus::kBasic || lb_[var] == ub_[var]) continue;
        const double d = -ColumnDot(var, pi);
        const bool eligible = (s == VarStatus::kAtLower && d < -tol) ||
                              (s == VarStatus::kAtUpper && d > tol) ||
                              (s == VarStatus::kFree && std::abs(d) > tol);
        if (!eligible) continue;
        if (bland) {
          best = var;
          reduced = d;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          best = var;
          reduced = d;
        }
      }
      entering = best;
    } else {
      entering = Price(pi, bland, reduced);
    }

    if (entering < 0) {
      if (!fresh) {
        if (!refresh()) {
          return Finish(LpStatus::kNumericalFailure, pi, iteration);
        }
        fresh = true;
        continue;
      }
      if (phase_one) return Finish(LpStatus::kInfeasible, pi, iteration);
      // Final check against the user tolerance on a fresh factorization.
      for (int p = 0; p < m_; ++p) {
        const int var = basic_[p];
        if (x_[var] < lb_[var] - options_.feasibility_tolerance ||
            x_[var] > ub_[var] + options_.feasibility_tolerance) {
          return Finish(LpStatus::kNumericalFailure, pi, iteration);
        }
      }
      return Finish(LpStatus::kOptimal, pi, iteration);
    }

    const double direction = reduced < 0.0 ? 1.0 : -1.0;
    LoadColumn(entering, alpha);
    Ftran(alpha);
    const RatioResult ratio =
        RatioTest(entering, direction, alpha, phase_one, bland);
    if (!ratio.found) {
      if (!fresh) {
        if (!refresh()) {
          return Finish(LpStatus::kNumericalFailure, pi, iteration);
        }
        fresh = true;
        continue;
      }
      return Finish(phase_one ? LpStatus::kNumericalFailure
                              : LpStatus::kUnbounded,
                    pi, iteration);
    }

    const double step = ratio.step;
    if (step != 0.0) {
      x_[entering] += direction * step;
      for (int p = 0; p < m_; ++p) {
        if (alpha[p] != 0.0) x_[basic_[p]] -= direction * step * alpha[p];
      }
    }
    if (ratio.bound_flip) {
      if (status_[entering] == VarStatus::kAtLower) {
        status_[entering] = VarStatus::kAtUpper;
        x_[entering] = ub_[entering];
      } else {
        status_[entering] = VarStatus::kAtLower;
        x_[entering] = lb_[entering];
      }
      fresh = false;
      continue;
    }

    const int position = ratio.position;
    const int leaving = basic_[position];
    if (ratio.target == BoundTarget::kLower) {
      status_[leaving] = VarStatus::kAtLower;
      x_[leaving] = lb_[leaving];
    } else {
      status_[leaving] = VarStatus::kAtUpper;
      x_[leaving] = ub_[leaving];
    }
    basic_position_[leaving] = -1;
    basic_[position] = entering;
    basic_position_[entering] = position;
    status_[entering] = VarStatus::kBasic;

    Eta eta;
    eta.position = position;
    eta.pivot = alpha[position];
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) > kDropTolerance || p == position) {
        eta.index.push_back(p);
        eta.value.push_back(alpha[p]);
      }
    }
    etas_.push_back(std::move(eta));
    fresh = false;
  }
}

LpSolver::LpSolver(const MilpModel& model)
    : impl_(std::make_unique<Impl>(model)) {}
LpSolver::~LpSolver() = default;
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;

LpSolution LpSolver::Solve(std::span<const double> lower,
                           std::span<const double> upper,
                           const Basis* warm_start, const LpOptions& options) {
  return impl_->Solve(lower, upper, warm_start, options);
}

LpSolution SolveLp(const MilpModel& model, const LpOptions& options) {
  LpSolver solver(model);
  return solver.Solve(options);
}

LpSolution LpSolver::Solve(const LpOptions& options) {
  return impl_->Solve(impl_->column_lower(), impl_->column_upper(), nullptr,
                      options);
}

}  // namespace vppbid::milp
