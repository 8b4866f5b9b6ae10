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

#include "vppbid/offer_optimizer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace vppbid {

using milp::Column;
using milp::RowSense;

VariableIndex::VariableIndex(int num_da, int num_ba, int num_energy,
                             int horizon, bool has_commitment)
    : num_da_(num_da),
      num_ba_(num_ba),
      num_energy_(num_energy),
      horizon_(horizon),
      has_commitment_(has_commitment) {
  const int ik = num_da * horizon;
  const int ijk = ik * num_ba;
  const int iwk = ik * num_energy;
  const int path = ijk * num_energy;
  const int sizes[kNumKinds] = {ik,   ijk,  ijk,  iwk,
                                iwk,  path, path, path,
                                path, ik,   has_commitment ? path : 0};
  for (int kind = 0; kind < kNumKinds; ++kind) {
    offset_[kind + 1] = offset_[kind] + sizes[kind];
  }
}

int VariableIndex::Count(VarKind kind) const {
  const int id = static_cast<int>(kind);
  return offset_[id + 1] - offset_[id];
}

int VariableIndex::QDa(int i, int k) const {
  return Begin(VarKind::kQDa) + i * horizon_ + k;
}
int VariableIndex::QUp(int i, int j, int k) const {
  return Begin(VarKind::kQUp) + (i * num_ba_ + j) * horizon_ + k;
}
int VariableIndex::QDw(int i, int j, int k) const {
  return Begin(VarKind::kQDw) + (i * num_ba_ + j) * horizon_ + k;
}
int VariableIndex::QPlus(int i, int w, int k) const {
  return Begin(VarKind::kQPlus) + (i * num_energy_ + w) * horizon_ + k;
}
int VariableIndex::QMinus(int i, int w, int k) const {
  return Begin(VarKind::kQMinus) + (i * num_energy_ + w) * horizon_ + k;
}

namespace {

int PathOffset(int i, int j, int w, int k, int num_ba, int num_energy,
               int horizon) {
  return ((i * num_ba + j) * num_energy + w) * horizon + k;
}

}  // namespace

int VariableIndex::Thermal(int i, int j, int w, int k) const {
  return Begin(VarKind::kThermal) +
         PathOffset(i, j, w, k, num_ba_, num_energy_, horizon_);
}
int VariableIndex::Charge(int i, int j, int w, int k) const {
  return Begin(VarKind::kCharge) +
         PathOffset(i, j, w, k, num_ba_, num_energy_, horizon_);
}
int VariableIndex::Discharge(int i, int j, int w, int k) const {
  return Begin(VarKind::kDischarge) +
         PathOffset(i, j, w, k, num_ba_, num_energy_, horizon_);
}
int VariableIndex::Level(int i, int j, int w, int k) const {
  return Begin(VarKind::kLevel) +
         PathOffset(i, j, w, k, num_ba_, num_energy_, horizon_);
}
int VariableIndex::Eps(int i, int k) const {
  return Begin(VarKind::kEps) + i * horizon_ + k;
}
int VariableIndex::Commit(int i, int j, int w, int k) const {
  if (!has_commitment_) {
    throw std::logic_error("commitment variables were eliminated");
  }
  return Begin(VarKind::kCommit) +
         PathOffset(i, j, w, k, num_ba_, num_energy_, horizon_);
}

VariableIndex::Entry VariableIndex::Decode(int column) const {
  if (column < 0 || column >= num_columns()) {
    throw std::out_of_range(fmt::format("column {} out of range", column));
  }
  int kind = 0;
  while (column >= offset_[kind + 1]) ++kind;
  int rest = column - offset_[kind];
  Entry entry;
  entry.kind = static_cast<VarKind>(kind);
  entry.k = rest % horizon_;
  rest /= horizon_;
  switch (entry.kind) {
    case VarKind::kQDa:
    case VarKind::kEps:
      entry.i = rest;
      break;
    case VarKind::kQUp:
    case VarKind::kQDw:
      entry.j = rest % num_ba_;
      entry.i = rest / num_ba_;
      break;
    case VarKind::kQPlus:
    case VarKind::kQMinus:
      entry.w = rest % num_energy_;
      entry.i = rest / num_energy_;
      break;
    default:
      entry.w = rest % num_energy_;
      rest /= num_energy_;
      entry.j = rest % num_ba_;
      entry.i = rest / num_ba_;
      break;
  }
  return entry;
}

std::string_view ToString(VarKind kind) {
  switch (kind) {
    case VarKind::kQDa:
      return "qDA";
    case VarKind::kQUp:
      return "qUP";
    case VarKind::kQDw:
      return "qDW";
    case VarKind::kQPlus:
      return "qPlus";
    case VarKind::kQMinus:
      return "qMinus";
    case VarKind::kThermal:
      return "d";
    case VarKind::kCharge:
      return "pCh";
    case VarKind::kDischarge:
      return "pDis";
    case VarKind::kLevel:
      return "level";
    case VarKind::kEps:
      return "eps";
    case VarKind::kCommit:
      return "u";
  }
  return "unknown";
}

std::string VariableIndex::Name(int column) const {
  const Entry e = Decode(column);
  std::string out(ToString(e.kind));
  out += '[';
  out += std::to_string(e.i);
  for (int index : {e.j, e.w}) {
    if (index >= 0) out += ',' + std::to_string(index);
  }
  out += ',' + std::to_string(e.k) + ']';
  return out;
}

std::string_view ToString(RegulationDirection direction) {
  switch (direction) {
    case RegulationDirection::kUp:
      return "up";
    case RegulationDirection::kDown:
      return "down";
    case RegulationDirection::kNone:
      return "none";
  }
  return "unknown";
}

RegulationDirection ComputeRegulationDirection(double da_price,
                                               double ba_price,
                                               double tolerance) {
  if (ba_price < da_price - tolerance) return RegulationDirection::kDown;
  if (ba_price > da_price + tolerance) return RegulationDirection::kUp;
  return RegulationDirection::kNone;
}

namespace {

// Order of `count` scenarios by price, ties by index.
std::vector<int> SortByPrice(int count, const auto& price) {
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return price(a) < price(b); });
  return order;
}

class Builder {
 public:
  Builder(const VppConfig& config, const ScenarioTree& tree,
          StrategyMode mode)
      : config_(config),
        tree_(tree),
        mode_(mode),
        index_(tree.num_day_ahead(), tree.num_balancing(), tree.num_energy(),
               config.horizon, true),
        big_m_(BigM(config)) {}

  OfferModel Build() {
    AddColumns();
    AddBalanceRows();
    AddDayAheadCurveRows();
    AddRegulationCurveRows();
    AddStorageRows();
    AddThermalRows();
    AddComplementarityRows();
    return OfferModel{std::move(model_), index_, mode_};
  }

 private:
  int I() const { return index_.num_day_ahead(); }
  int J() const { return index_.num_balancing(); }
  int W() const { return index_.num_energy(); }
  int K() const { return index_.horizon(); }

  void Add(int expected, double lower, double upper, double objective,
           bool binary = false) {
    const int id = model_.AddColumn(
        Column{index_.Name(expected), lower, upper, objective, binary});
    if (id != expected) throw std::logic_error("column layout mismatch");
  }

  void AddColumns() {
    const ThermalUnit& t = config_.thermal;
    const StorageUnit& s = config_.storage;
    const double da_lower = -s.charge_max;
    const double da_upper = t.capacity + config_.renewable.capacity +
                            s.discharge_max;
    for (int i = 0; i < I(); ++i) {
      for (int k = 0; k < K(); ++k) {
        Add(index_.QDa(i, k), da_lower, da_upper,
            tree_.da_prob[i] * tree_.da_prices[i][k]);
      }
    }
    for (bool up : {true, false}) {
      for (int i = 0; i < I(); ++i) {
        for (int j = 0; j < J(); ++j) {
          for (int k = 0; k < K(); ++k) {
            const double da = tree_.da_prices[i][k];
            const double ba = tree_.ba_prices[i][j][k];
            const RegulationDirection dir = ComputeRegulationDirection(da, ba);
            const bool open = up ? dir == RegulationDirection::kUp
                                 : dir == RegulationDirection::kDown;
            const double weight = tree_.da_prob[i] * tree_.ba_prob[i][j] * ba;
            Add(up ? index_.QUp(i, j, k) : index_.QDw(i, j, k), 0.0,
                open ? big_m_ : 0.0, up ? weight : -weight);
          }
        }
      }
    }
    for (bool plus : {true, false}) {
      for (int i = 0; i < I(); ++i) {
        for (int w = 0; w < W(); ++w) {
          for (int k = 0; k < K(); ++k) {
            double expected_price = 0.0;
            for (int j = 0; j < J(); ++j) {
              const double da = tree_.da_prices[i][k];
              const double ba = tree_.ba_prices[i][j][k];
              expected_price +=
                  tree_.ba_prob[i][j] * (plus ? std::min(da, ba)
                                              : std::max(da, ba));
            }
            const double weight =
                tree_.da_prob[i] * tree_.energy_prob[w] * expected_price;
            Add(plus ? index_.QPlus(i, w, k) : index_.QMinus(i, w, k), 0.0,
                big_m_, plus ? weight : -weight);
          }
        }
      }
    }
    const double terminal =
        std::max(s.level_min, s.terminal_level_min.value_or(s.level_min));
    for (VarKind kind : {VarKind::kThermal, VarKind::kCharge,
                         VarKind::kDischarge, VarKind::kLevel}) {
      ForEachPath([&](int i, int j, int w, int k) {
        const double p = PathProb(i, j, w);
        switch (kind) {
          case VarKind::kThermal:
            Add(index_.Thermal(i, j, w, k), 0.0, t.capacity,
                -p * t.marginal_cost);
            break;
          case VarKind::kCharge:
            Add(index_.Charge(i, j, w, k), 0.0, s.charge_max, 0.0);
            break;
          case VarKind::kDischarge:
            Add(index_.Discharge(i, j, w, k), 0.0, s.discharge_max, 0.0);
            break;
          default:
            Add(index_.Level(i, j, w, k),
                k == K() - 1 ? terminal : s.level_min, s.level_max, 0.0);
            break;
        }
      });
    }
    double eps_lower = 0.0;
    double eps_upper = 1.0;
    if (mode_ == StrategyMode::kPassiveOnly) eps_upper = 0.0;
    if (mode_ == StrategyMode::kActiveOnly) eps_lower = 1.0;
    for (int i = 0; i < I(); ++i) {
      for (int k = 0; k < K(); ++k) {
        Add(index_.Eps(i, k), eps_lower, eps_upper, 0.0, true);
      }
    }
    ForEachPath([&](int i, int j, int w, int k) {
      Add(index_.Commit(i, j, w, k), 0.0, 1.0,
          -PathProb(i, j, w) * t.fixed_cost, true);
    });
  }

  void AddBalanceRows() {
    ForEachPath([&](int i, int j, int w, int k) {
      model_.AddRow(fmt::format("bal[{},{},{},{}]", i, j, w, k),
                    RowSense::kEqual, tree_.energy[w][k],
                    {{index_.QDa(i, k), 1.0},
                     {index_.QUp(i, j, k), 1.0},
                     {index_.QDw(i, j, k), -1.0},
                     {index_.QPlus(i, w, k), 1.0},
                     {index_.QMinus(i, w, k), -1.0},
                     {index_.Thermal(i, j, w, k), -1.0},
                     {index_.Discharge(i, j, w, k), -1.0},
                     {index_.Charge(i, j, w, k), 1.0}});
    });
  }

  // For consecutive scenarios a (cheaper) and b: column(b) - column(a) >= 0,
  // or = 0 on a price tie; `reversed` flips the inequality.
  void AddCurveRows(const std::string& tag, const std::vector<int>& order,
                    const auto& price, const auto& column, bool reversed) {
    for (size_t n = 1; n < order.size(); ++n) {
      const int a = order[n - 1];
      const int b = order[n];
      const bool tie = std::abs(price(b) - price(a)) <= kPriceTieTolerance;
      const RowSense sense = tie        ? RowSense::kEqual
                             : reversed ? RowSense::kLessEqual
                                        : RowSense::kGreaterEqual;
      model_.AddRow(fmt::format("{}[{},{}]", tag, a, b), sense, 0.0,
                    {{column(b), 1.0}, {column(a), -1.0}});
    }
  }

  void AddDayAheadCurveRows() {
    for (int k = 0; k < K(); ++k) {
      auto price = [&](int i) { return tree_.da_prices[i][k]; };
      auto column = [&](int i) { return index_.QDa(i, k); };
      AddCurveRows(fmt::format("daCurve{}", k), SortByPrice(I(), price), price,
                   column, false);
    }
  }

  void AddRegulationCurveRows() {
    for (int i = 0; i < I(); ++i) {
      for (int k = 0; k < K(); ++k) {
        auto price = [&](int j) { return tree_.ba_prices[i][j][k]; };
        const std::vector<int> order = SortByPrice(J(), price);
        AddCurveRows(fmt::format("upCurve{}_{}", i, k), order, price,
                     [&](int j) { return index_.QUp(i, j, k); }, false);
        AddCurveRows(fmt::format("dwCurve{}_{}", i, k), order, price,
                     [&](int j) { return index_.QDw(i, j, k); }, true);
      }
    }
  }

  void AddStorageRows() {
    const StorageUnit& s = config_.storage;
    ForEachPath([&](int i, int j, int w, int k) {
      std::vector<milp::RowEntry> entries = {
          {index_.Level(i, j, w, k), 1.0},
          {index_.Charge(i, j, w, k), -s.efficiency},
          {index_.Discharge(i, j, w, k), 1.0}};
      double rhs = s.InitialLevel();
      if (k > 0) {
        entries.push_back({index_.Level(i, j, w, k - 1), -1.0});
        rhs = 0.0;
      }
      model_.AddRow(fmt::format("lev[{},{},{},{}]", i, j, w, k),
                    RowSense::kEqual, rhs, std::move(entries));
    });
  }

  void AddThermalRows() {
    const ThermalUnit& t = config_.thermal;
    ForEachPath([&](int i, int j, int w, int k) {
      const int d = index_.Thermal(i, j, w, k);
      const int u = index_.Commit(i, j, w, k);
      model_.AddRow(fmt::format("dMax[{},{},{},{}]", i, j, w, k),
                    RowSense::kLessEqual, 0.0, {{d, 1.0}, {u, -t.capacity}});
      model_.AddRow(fmt::format("dMin[{},{},{},{}]", i, j, w, k),
                    RowSense::kGreaterEqual, 0.0,
                    {{d, 1.0}, {u, -t.min_output}});
    });
    ForEachPath([&](int i, int j, int w, int k) {
      const int d = index_.Thermal(i, j, w, k);
      const std::string suffix = fmt::format("[{},{},{},{}]", i, j, w, k);
      if (k == 0) {
        model_.AddRow("rUp" + suffix, RowSense::kLessEqual,
                      t.ramp_up + t.initial_output, {{d, 1.0}});
        model_.AddRow("rDw" + suffix, RowSense::kLessEqual,
                      t.ramp_down - t.initial_output, {{d, -1.0}});
        return;
      }
      const int prev = index_.Thermal(i, j, w, k - 1);
      model_.AddRow("rUp" + suffix, RowSense::kLessEqual, t.ramp_up,
                    {{d, 1.0}, {prev, -1.0}});
      model_.AddRow("rDw" + suffix, RowSense::kLessEqual, t.ramp_down,
                    {{prev, 1.0}, {d, -1.0}});
    });
  }

  void AddComplementarityRows() {
    for (int i = 0; i < I(); ++i) {
      for (int k = 0; k < K(); ++k) {
        const int eps = index_.Eps(i, k);
        for (int j = 0; j < J(); ++j) {
          model_.AddRow(fmt::format("act[{},{},{}]", i, j, k),
                        RowSense::kLessEqual, 0.0,
                        {{index_.QUp(i, j, k), 1.0},
                         {index_.QDw(i, j, k), 1.0},
                         {eps, -big_m_}});
        }
        for (int w = 0; w < W(); ++w) {
          model_.AddRow(fmt::format("pas[{},{},{}]", i, w, k),
                        RowSense::kLessEqual, big_m_,
                        {{index_.QPlus(i, w, k), 1.0},
                         {index_.QMinus(i, w, k), 1.0},
                         {eps, big_m_}});
        }
      }
    }
  }

  double PathProb(int i, int j, int w) const {
    return tree_.da_prob[i] * tree_.ba_prob[i][j] * tree_.energy_prob[w];
  }

  void ForEachPath(const auto& body) const {
    for (int i = 0; i < I(); ++i) {
      for (int j = 0; j < J(); ++j) {
        for (int w = 0; w < W(); ++w) {
          for (int k = 0; k < K(); ++k) body(i, j, w, k);
        }
      }
    }
  }

  const VppConfig& config_;
  const ScenarioTree& tree_;
  StrategyMode mode_;
  VariableIndex index_;
  double big_m_;
  milp::MilpModel model_{"vpp_offer"};
};

// Rounds binaries that sit within the tolerance; returns false otherwise.
bool SnapBinaries(const milp::MilpModel& model, std::vector<double>& values,
                  double tolerance) {
  for (int c = 0; c < model.num_columns(); ++c) {
    if (!model.column(c).is_binary) continue;
    const double rounded = std::round(values[c]);
    if (std::abs(values[c] - rounded) > tolerance) return false;
    values[c] = rounded;
  }
  return true;
}

}  // namespace

OfferModel BuildModel(const VppConfig& config, const ScenarioTree& tree,
                      StrategyMode mode) {
  RequireValid(config, tree);
  return Builder(config, tree, mode).Build();
}

OfferModel EliminateRedundantBinaries(const OfferModel& offer,
                                      const VppConfig& config) {
  const VariableIndex& index = offer.index;
  if (!index.has_commitment() || config.thermal.min_output != 0.0 ||
      config.thermal.fixed_cost != 0.0) {
    return offer;
  }
  const milp::MilpModel& model = offer.model;
  const int first = index.Begin(VarKind::kCommit);
  std::vector<bool> drop_columns(model.num_columns(), false);
  for (int c = first; c < model.num_columns(); ++c) drop_columns[c] = true;
  std::vector<bool> drop_rows(model.num_rows(), false);
  for (int r = 0; r < model.num_rows(); ++r) {
    for (const milp::RowEntry& e : model.row(r).entries) {
      if (e.column >= first) drop_rows[r] = true;
    }
  }
  OfferModel out{model.Without(drop_rows, drop_columns), VariableIndex(
      index.num_day_ahead(), index.num_balancing(), index.num_energy(),
      index.horizon(), false), offer.mode};
  for (int c = index.Begin(VarKind::kThermal);
       c < index.Begin(VarKind::kThermal) + index.Count(VarKind::kThermal);
       ++c) {
    milp::Column& column = out.model.mutable_column(c);
    column.lower = 0.0;
    column.upper = config.thermal.capacity;
  }
  return out;
}

StrategySolution ExtractSolution(const OfferModel& offer,
                                 const milp::LpSolution& raw,
                                 const ScenarioTree& tree,
                                 const VppConfig& config) {
  const VariableIndex& index = offer.index;
  const milp::MilpModel& model = offer.model;
  if (static_cast<int>(raw.values.size()) != model.num_columns()) {
    throw ExtractionError(fmt::format(
        "solution has {} values for {} columns", raw.values.size(),
        model.num_columns()));
  }
  StrategySolution out;
  out.mode = offer.mode;
  out.values = raw.values;
  if (!SnapBinaries(model, out.values, milp::kIntegralityTolerance)) {
    throw ExtractionError("binary variable violates integrality");
  }
  const int I = index.num_day_ahead();
  const int J = index.num_balancing();
  const int W = index.num_energy();
  const int K = index.horizon();
  out.rho_da.assign(K, 0.0);
  out.rho_act.assign(K, 0.0);
  out.rho_pas.assign(K, 0.0);
  out.cost.assign(K, 0.0);
  const auto& v = out.values;
  const ThermalUnit& t = config.thermal;
  for (int i = 0; i < I; ++i) {
    const double pi = tree.da_prob[i];
    for (int k = 0; k < K; ++k) {
      const double da = tree.da_prices[i][k];
      out.rho_da[k] += pi * da * v[index.QDa(i, k)];
      for (int j = 0; j < J; ++j) {
        const double pij = pi * tree.ba_prob[i][j];
        const double ba = tree.ba_prices[i][j][k];
        out.rho_act[k] +=
            pij * ba * (v[index.QUp(i, j, k)] - v[index.QDw(i, j, k)]);
        for (int w = 0; w < W; ++w) {
          const double p = pij * tree.energy_prob[w];
          out.rho_pas[k] += p * (std::min(da, ba) * v[index.QPlus(i, w, k)] -
                                 std::max(da, ba) * v[index.QMinus(i, w, k)]);
          double c = t.marginal_cost * v[index.Thermal(i, j, w, k)];
          if (index.has_commitment()) {
            c += t.fixed_cost * v[index.Commit(i, j, w, k)];
          }
          out.cost[k] += p * c;
        }
      }
    }
  }
  for (int k = 0; k < K; ++k) {
    out.objective += out.rho_da[k] + out.rho_act[k] + out.rho_pas[k] -
                     out.cost[k];
  }
  const double scale = std::max(1.0, std::abs(raw.objective));
  if (std::abs(out.objective - raw.objective) > 1e-6 * scale) {
    throw ExtractionError(fmt::format(
        "decomposition sums to {} but the solver reports {}", out.objective,
        raw.objective));
  }
  return out;
}

StrategyResult SolveStrategy(const VppConfig& config, const ScenarioTree& tree,
                             StrategyMode mode,
                             const milp::MilpLimits& limits) {
  StrategyResult out;
  out.offer = EliminateRedundantBinaries(BuildModel(config, tree, mode), config);
  milp::MilpResult result = milp::SolveMilp(out.offer.model, limits);
  out.status = result.status;
  out.stats = result.stats;
  if (result.status == milp::MilpStatus::kOptimal ||
      result.status == milp::MilpStatus::kLimitWithIncumbent) {
    StrategySolution solution =
        ExtractSolution(out.offer, result.solution, tree, config);
    solution.status = result.status;
    solution.stats = result.stats;
    out.solution = std::move(solution);
  }
  return out;
}

}  // namespace vppbid
