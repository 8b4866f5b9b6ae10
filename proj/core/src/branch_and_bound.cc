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

#include "vppbid/branch_and_bound.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

namespace vppbid::milp {

std::string_view ToString(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal:
      return "optimal";
    case MilpStatus::kInfeasible:
      return "infeasible";
    case MilpStatus::kUnbounded:
      return "unbounded";
    case MilpStatus::kLimitWithIncumbent:
      return "limit reached with incumbent";
    case MilpStatus::kNoIncumbent:
      return "no incumbent";
    case MilpStatus::kNumericalFailure:
      return "numerical failure";
  }
  return "unknown";
}

double RelativeGap(double bound, double incumbent) {
  if (!std::isfinite(incumbent) || !std::isfinite(bound)) return kInfinity;
  return (bound - incumbent) / std::max(1.0, std::abs(incumbent));
}

namespace {

struct BoundChange {
  int column;
  double lower;
  double upper;
};

struct Node {
  std::int64_t id = 0;
  int depth = 0;
  // Upper bound on the subtree, from the parent LP or strong branching.
  double bound = kInfinity;
  std::vector<BoundChange> changes;
  std::shared_ptr<const Basis> warm_start;
  // Branching that created the node, for pseudo-cost updates.
  int branched = -1;
  bool up = false;
  double fraction = 0.0;
  double parent_objective = kInfinity;
  bool evaluated = false;
};

struct PseudoCost {
  double down_sum = 0.0;
  double up_sum = 0.0;
  int down_count = 0;
  int up_count = 0;
};

class Search {
 public:
  Search(const MilpModel& model, const MilpLimits& limits)
      : model_(model), limits_(limits), solver_(model) {
    for (int j = 0; j < model.num_columns(); ++j) {
      base_lower_.push_back(model.column(j).lower);
      base_upper_.push_back(model.column(j).upper);
      if (model.column(j).is_binary) binaries_.push_back(j);
    }
    pseudo_.resize(model.num_columns());
    lp_options_.feasibility_tolerance = limits.feasibility_tolerance;
  }

  MilpResult Run();

 private:
  struct Choice {
    int column = -1;
    double value = 0.0;
    // Strong-branching results, when available.
    bool evaluated = false;
    LpSolution down;
    LpSolution up;
  };

  double Elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  size_t SelectNode() const;
  double OpenBound() const;
  bool Prunable(double bound) const;
  LpSolution Solve(const std::vector<double>& lower,
                   const std::vector<double>& upper, const Basis* warm);
  LpSolution SolveNode(const Node& node, std::vector<double>& lower,
                       std::vector<double>& upper);
  bool IsFractional(double v) const {
    return std::abs(v - std::round(v)) > limits_.integrality_tolerance;
  }

  // Solves with every binary fixed to `fixing` and keeps the result if it
  // beats the incumbent.
  bool TryFixing(const std::vector<double>& fixing, const Basis* warm);
  bool TryRounding(const LpSolution& relaxation);
  void LocalSearch();
  void AcceptedIncumbent();
  void RootReducedCostFixing();
  void ReducedCostFixing(const LpSolution& lp, const std::vector<double>& lower,
                         const std::vector<double>& upper,
                         std::vector<BoundChange>& changes) const;

  void UpdatePseudoCost(int column, bool up, double fraction, double parent,
                        const LpSolution& child);
  double PseudoGain(int column, bool up) const;
  Choice ChooseMostFractional(const LpSolution& lp) const;
  Choice ChooseReliable(const LpSolution& lp, std::vector<double>& lower,
                        std::vector<double>& upper);

  const MilpModel& model_;
  MilpLimits limits_;
  LpSolver solver_;
  LpOptions lp_options_;
  std::vector<double> base_lower_;
  std::vector<double> base_upper_;
  std::vector<int> binaries_;
  std::vector<PseudoCost> pseudo_;

  std::vector<Node> open_;
  std::int64_t next_id_ = 0;
  bool has_incumbent_ = false;
  LpSolution incumbent_;
  LpSolution root_;
  bool have_root_ = false;
  BnbStats stats_;
  // Bounds of nodes whose LP failed numerically; they stay in the bound.
  double unresolved_bound_ = -kInfinity;
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

size_t Search::SelectNode() const {
  if (!has_incumbent_) return open_.size() - 1;
  size_t best = 0;
  for (size_t t = 1; t < open_.size(); ++t) {
    if (open_[t].bound > open_[best].bound ||
        (open_[t].bound == open_[best].bound && open_[t].id < open_[best].id)) {
      best = t;
    }
  }
  return best;
}

double Search::OpenBound() const {
  double bound = unresolved_bound_;
  for (const Node& node : open_) bound = std::max(bound, node.bound);
  return bound;
}

bool Search::Prunable(double bound) const {
  if (!has_incumbent_) return false;
  return RelativeGap(bound, incumbent_.objective) <= limits_.gap_target;
}

LpSolution Search::Solve(const std::vector<double>& lower,
                         const std::vector<double>& upper, const Basis* warm) {
  LpSolution lp = solver_.Solve(lower, upper, warm, lp_options_);
  stats_.lp_iterations += lp.iterations;
  if (lp.status == LpStatus::kNumericalFailure && warm != nullptr) {
    lp = solver_.Solve(lower, upper, nullptr, lp_options_);
    stats_.lp_iterations += lp.iterations;
  }
  return lp;
}

LpSolution Search::SolveNode(const Node& node, std::vector<double>& lower,
                             std::vector<double>& upper) {
  lower = base_lower_;
  upper = base_upper_;
  for (const BoundChange& c : node.changes) {
    lower[c.column] = std::max(lower[c.column], c.lower);
    upper[c.column] = std::min(upper[c.column], c.upper);
  }
  for (int j : binaries_) {
    if (lower[j] > upper[j]) {
      LpSolution infeasible;
      infeasible.status = LpStatus::kInfeasible;
      return infeasible;
    }
  }
  return Solve(lower, upper, node.warm_start.get());
}

bool Search::TryFixing(const std::vector<double>& fixing, const Basis* warm) {
  std::vector<double> lower = base_lower_;
  std::vector<double> upper = base_upper_;
  for (int j : binaries_) {
    const double v = std::clamp(fixing[j], lower[j], upper[j]);
    lower[j] = v;
    upper[j] = v;
  }
  LpSolution lp = Solve(lower, upper, warm);
  if (lp.status != LpStatus::kOptimal && warm != nullptr) {
    lp = Solve(lower, upper, nullptr);
  }
  ++stats_.heuristic_lps;
  if (lp.status != LpStatus::kOptimal) return false;
  for (int j : binaries_) lp.values[j] = lower[j];
  if (has_incumbent_) {
    const double scale = std::max(1.0, std::abs(incumbent_.objective));
    if (lp.objective <= incumbent_.objective + 1e-9 * scale) return false;
  }
  has_incumbent_ = true;
  incumbent_ = std::move(lp);
  stats_.incumbent = incumbent_.objective;
  return true;
}

bool Search::TryRounding(const LpSolution& relaxation) {
  std::vector<double> fixing = relaxation.values;
  for (int j : binaries_) fixing[j] = std::round(fixing[j]);
  return TryFixing(fixing, &relaxation.basis);
}

// First-improvement search over single binary flips of the incumbent.
void Search::LocalSearch() {
  for (int pass = 0; pass < limits_.local_search_passes; ++pass) {
    bool improved = false;
    for (int j : binaries_) {
      if (base_lower_[j] == base_upper_[j]) continue;
      std::vector<double> fixing = incumbent_.values;
      fixing[j] = 1.0 - std::round(fixing[j]);
      const Basis basis = incumbent_.basis;
      if (TryFixing(fixing, &basis)) improved = true;
    }
    if (!improved) break;
  }
}

void Search::AcceptedIncumbent() {
  if (limits_.heuristics) LocalSearch();
  RootReducedCostFixing();
}

// A nonbasic binary whose reduced cost shows that moving it to the opposite
// bound drops the LP bound to the incumbent cannot change in any better
// solution.
void Search::ReducedCostFixing(const LpSolution& lp,
                               const std::vector<double>& lower,
                               const std::vector<double>& upper,
                               std::vector<BoundChange>& changes) const {
  if (!has_incumbent_ || lp.reduced_costs.empty()) return;
  for (int j : binaries_) {
    if (lower[j] == upper[j] || lp.basis.status.empty() ||
        lp.basis.status[j] == VarStatus::kBasic) {
      continue;
    }
    const double v = lp.values[j];
    const double rc = lp.reduced_costs[j];
    if (v <= lower[j] + limits_.integrality_tolerance &&
        Prunable(lp.objective + rc * (upper[j] - lower[j]))) {
      changes.push_back(BoundChange{j, lower[j], lower[j]});
    } else if (v >= upper[j] - limits_.integrality_tolerance &&
               Prunable(lp.objective - rc * (upper[j] - lower[j]))) {
      changes.push_back(BoundChange{j, upper[j], upper[j]});
    }
  }
}

void Search::RootReducedCostFixing() {
  if (!have_root_) return;
  std::vector<BoundChange> changes;
  ReducedCostFixing(root_, base_lower_, base_upper_, changes);
  for (const BoundChange& c : changes) {
    base_lower_[c.column] = c.lower;
    base_upper_[c.column] = c.upper;
    ++stats_.root_fixings;
  }
}

void Search::UpdatePseudoCost(int column, bool up, double fraction,
                              double parent, const LpSolution& child) {
  double gain;
  if (child.status == LpStatus::kOptimal) {
    gain = std::max(0.0, parent - child.objective);
  } else if (child.status == LpStatus::kInfeasible) {
    // Infeasibility counts as a large but finite loss.
    gain = std::max(1.0, std::abs(parent));
  } else {
    return;
  }
  PseudoCost& pc = pseudo_[column];
  const double width = up ? 1.0 - fraction : fraction;
  const double unit = gain / std::max(width, 1e-6);
  if (up) {
    pc.up_sum += unit;
    ++pc.up_count;
  } else {
    pc.down_sum += unit;
    ++pc.down_count;
  }
}

double Search::PseudoGain(int column, bool up) const {
  const PseudoCost& pc = pseudo_[column];
  if (up ? pc.up_count > 0 : pc.down_count > 0) {
    return up ? pc.up_sum / pc.up_count : pc.down_sum / pc.down_count;
  }
  double sum = 0.0;
  int count = 0;
  for (int j : binaries_) {
    const PseudoCost& other = pseudo_[j];
    if (up ? other.up_count > 0 : other.down_count > 0) {
      sum += up ? other.up_sum / other.up_count
                : other.down_sum / other.down_count;
      ++count;
    }
  }
  return count > 0 ? sum / count : 1.0;
}

Search::Choice Search::ChooseMostFractional(const LpSolution& lp) const {
  Choice choice;
  double best_fraction = 0.0;
  for (int j : binaries_) {
    const double v = lp.values[j];
    const double fraction = std::abs(v - std::round(v));
    if (IsFractional(v) && fraction > best_fraction) {
      best_fraction = fraction;
      choice.column = j;
      choice.value = v;
    }
  }
  return choice;
}

Search::Choice Search::ChooseReliable(const LpSolution& lp,
                                      std::vector<double>& lower,
                                      std::vector<double>& upper) {
  constexpr double kMinGain = 1e-6;
  struct Candidate {
    int column;
    double score;
  };
  std::vector<Candidate> candidates;
  for (int j : binaries_) {
    const double f = lp.values[j] - std::floor(lp.values[j]);
    if (!IsFractional(lp.values[j])) continue;
    const double down = std::max(f * PseudoGain(j, false), kMinGain);
    const double up = std::max((1.0 - f) * PseudoGain(j, true), kMinGain);
    candidates.push_back({j, down * up});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.score > b.score;
                   });
  Choice best;
  if (candidates.empty()) return best;
  double best_score = -1.0;
  int strong = 0;
  int since_improvement = 0;
  for (const Candidate& candidate : candidates) {
    const int j = candidate.column;
    const PseudoCost& pc = pseudo_[j];
    const bool reliable = std::min(pc.down_count, pc.up_count) >=
                          limits_.reliability;
    if (reliable || strong >= limits_.max_strong_candidates ||
        since_improvement >= limits_.strong_lookahead) {
      if (candidate.score > best_score) {
        best_score = candidate.score;
        best = Choice{j, lp.values[j], false, {}, {}};
      }
      continue;
    }
    ++strong;
    const double f = lp.values[j] - std::floor(lp.values[j]);
    const double saved_lower = lower[j];
    const double saved_upper = upper[j];
    upper[j] = std::floor(lp.values[j]);
    LpSolution down = Solve(lower, upper, &lp.basis);
    upper[j] = saved_upper;
    lower[j] = std::ceil(lp.values[j]);
    LpSolution up = Solve(lower, upper, &lp.basis);
    lower[j] = saved_lower;
    stats_.strong_branching_lps += 2;
    UpdatePseudoCost(j, false, f, lp.objective, down);
    UpdatePseudoCost(j, true, f, lp.objective, up);
    for (const LpSolution* child : {&down, &up}) {
      if (child->status != LpStatus::kOptimal) continue;
      const bool integral = std::none_of(
          binaries_.begin(), binaries_.end(),
          [&](int b) { return IsFractional(child->values[b]); });
      if (integral && TryRounding(*child)) AcceptedIncumbent();
    }

    auto closed = [&](const LpSolution& child) {
      return child.status == LpStatus::kInfeasible ||
             (child.status == LpStatus::kOptimal && Prunable(child.objective));
    };
    const double down_gain =
        down.status == LpStatus::kOptimal ? lp.objective - down.objective
                                          : kInfinity;
    const double up_gain =
        up.status == LpStatus::kOptimal ? lp.objective - up.objective
                                        : kInfinity;
    const double score = std::max(std::min(down_gain, 1e30), kMinGain) *
                         std::max(std::min(up_gain, 1e30), kMinGain);
    const bool decisive = closed(down) || closed(up);
    if (decisive || score > best_score) {
      best_score = decisive ? kInfinity : score;
      best = Choice{j, lp.values[j], true, std::move(down), std::move(up)};
      since_improvement = 0;
      if (decisive) break;
    } else {
      ++since_improvement;
    }
  }
  return best;
}

MilpResult Search::Run() {
  MilpResult result;
  std::vector<double> lower;
  std::vector<double> upper;
  auto finish_early = [&](MilpStatus status) {
    result.status = status;
    result.stats = stats_;
    result.stats.seconds = Elapsed();
    return result;
  };

  ++stats_.nodes;
  root_ = Solve(base_lower_, base_upper_, nullptr);
  if (root_.status == LpStatus::kUnbounded) {
    return finish_early(MilpStatus::kUnbounded);
  }
  if (root_.status == LpStatus::kNumericalFailure ||
      root_.status == LpStatus::kIterationLimit) {
    return finish_early(MilpStatus::kNumericalFailure);
  }
  bool limit_hit = false;
  if (root_.status == LpStatus::kOptimal) {
    have_root_ = true;
    stats_.root_bound = root_.objective;
    if (limits_.heuristics && !binaries_.empty()) {
      bool found = false;
      for (double fill : {0.0, 1.0}) {
        found = TryFixing(std::vector<double>(model_.num_columns(), fill),
                          &root_.basis) ||
                found;
      }
      found = TryRounding(root_) || found;
      if (found) AcceptedIncumbent();
    }
    Node root_node{next_id_++, 0, root_.objective, {}, nullptr};
    root_node.evaluated = true;
    open_.push_back(std::move(root_node));
  }

  bool first = true;
  while (!open_.empty()) {
    if (has_incumbent_ && Prunable(OpenBound())) break;
    if (stats_.nodes >= limits_.max_nodes ||
        Elapsed() >= limits_.max_seconds) {
      limit_hit = true;
      break;
    }
    const size_t pick = SelectNode();
    Node node = std::move(open_[pick]);
    open_.erase(open_.begin() + static_cast<std::ptrdiff_t>(pick));
    if (Prunable(node.bound)) continue;

    LpSolution lp;
    if (first) {
      // The root LP was solved up front.
      first = false;
      lp = root_;
      lower = base_lower_;
      upper = base_upper_;
    } else {
      ++stats_.nodes;
      lp = SolveNode(node, lower, upper);
      if (node.branched >= 0 && !node.evaluated) {
        UpdatePseudoCost(node.branched, node.up, node.fraction,
                         node.parent_objective, lp);
      }
    }
    if (lp.status == LpStatus::kInfeasible) continue;
    if (lp.status != LpStatus::kOptimal) {
      ++stats_.numerical_failures;
      unresolved_bound_ = std::max(unresolved_bound_, node.bound);
      continue;
    }
    const double bound = std::min(node.bound, lp.objective);
    if (Prunable(bound)) continue;

    Choice choice = limits_.branching == BranchingRule::kMostFractional
                        ? ChooseMostFractional(lp)
                        : ChooseReliable(lp, lower, upper);
    if (choice.column < 0) {
      if (TryRounding(lp)) AcceptedIncumbent();
      continue;
    }
    if (Prunable(bound)) continue;

    std::vector<BoundChange> changes = node.changes;
    ReducedCostFixing(lp, lower, upper, changes);
    auto shared_basis = std::make_shared<const Basis>(std::move(lp.basis));
    const int column = choice.column;
    const double value = choice.value;
    const double fraction = value - std::floor(value);
    auto child = [&](bool up) {
      Node c;
      c.id = next_id_++;
      c.depth = node.depth + 1;
      c.bound = bound;
      c.changes = changes;
      const double fixed = up ? std::ceil(value) : std::floor(value);
      c.changes.push_back(BoundChange{column, fixed, fixed});
      c.warm_start = shared_basis;
      c.branched = column;
      c.up = up;
      c.fraction = fraction;
      c.parent_objective = lp.objective;
      if (choice.evaluated) {
        LpSolution& eval = up ? choice.up : choice.down;
        c.evaluated = true;
        if (eval.status == LpStatus::kOptimal) {
          c.bound = std::min(bound, eval.objective);
          c.warm_start = std::make_shared<const Basis>(std::move(eval.basis));
        } else if (eval.status == LpStatus::kInfeasible) {
          c.bound = -kInfinity;
        }
      }
      return c;
    };
    Node down = child(false);
    Node up = child(true);
    // The preferred child goes last so the plunge visits it first.
    const bool prefer_up = value - std::floor(value) >= 0.5;
    for (Node* c : prefer_up ? std::array<Node*, 2>{&down, &up}
                             : std::array<Node*, 2>{&up, &down}) {
      if (c->bound == -kInfinity || Prunable(c->bound)) continue;
      open_.push_back(std::move(*c));
    }
  }

  stats_.seconds = Elapsed();
  if (has_incumbent_) {
    const double open_bound = OpenBound();
    stats_.best_bound = std::max(incumbent_.objective, open_bound);
    stats_.gap = RelativeGap(stats_.best_bound, incumbent_.objective);
    result.status = limit_hit && !Prunable(open_bound)
                        ? MilpStatus::kLimitWithIncumbent
                        : MilpStatus::kOptimal;
    if (result.status == MilpStatus::kOptimal &&
        stats_.numerical_failures > 0 && !Prunable(unresolved_bound_)) {
      result.status = MilpStatus::kLimitWithIncumbent;
    }
    result.solution = std::move(incumbent_);
  } else if (limit_hit) {
    stats_.best_bound = OpenBound();
    result.status = MilpStatus::kNoIncumbent;
  } else if (stats_.numerical_failures > 0) {
    stats_.best_bound = unresolved_bound_;
    result.status = MilpStatus::kNumericalFailure;
  } else {
    stats_.best_bound = -kInfinity;
    result.status = MilpStatus::kInfeasible;
    result.solution.status = LpStatus::kInfeasible;
  }
  result.stats = stats_;
  return result;
}

}  // namespace

MilpResult SolveMilp(const MilpModel& model, const MilpLimits& limits) {
  Search search(model, limits);
  return search.Run();
}

}  // namespace vppbid::milp
