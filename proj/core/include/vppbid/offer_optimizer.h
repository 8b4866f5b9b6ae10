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

// Three-stage stochastic offering problem as a MILP.
//
// Stage one fixes day-ahead quantities qDA(i,k) per day-ahead price scenario;
// stage two fixes regulation offers qUP/qDW(i,j,k) or, for a passive
// interval, deviations q+/q-(i,w,k); dispatch d, pCh, pDis and the storage
// level are recourse on the full path (i,j,w). eps(i,k) = 1 selects active
// participation at interval k of day-ahead scenario i.

#ifndef VPPBID_OFFER_OPTIMIZER_H_
#define VPPBID_OFFER_OPTIMIZER_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vppbid/branch_and_bound.h"
#include "vppbid/market_model.h"
#include "vppbid/milp_model.h"

namespace vppbid {

inline constexpr double kPriceTieTolerance = 1e-9;

enum class VarKind {
  kQDa,
  kQUp,
  kQDw,
  kQPlus,
  kQMinus,
  kThermal,
  kCharge,
  kDischarge,
  kLevel,
  kEps,
  kCommit,
};

// Column layout of the offer model. Each kind occupies one contiguous block,
// in the order of VarKind, with the interval index varying fastest.
class VariableIndex {
 public:
  struct Entry {
    VarKind kind = VarKind::kQDa;
    // Unused indices are -1.
    int i = -1;
    int j = -1;
    int w = -1;
    int k = -1;
  };

  VariableIndex() = default;
  VariableIndex(int num_da, int num_ba, int num_energy, int horizon,
                bool has_commitment);

  int num_day_ahead() const { return num_da_; }
  int num_balancing() const { return num_ba_; }
  int num_energy() const { return num_energy_; }
  int horizon() const { return horizon_; }
  bool has_commitment() const { return has_commitment_; }
  int num_columns() const { return offset_[kNumKinds]; }

  int QDa(int i, int k) const;
  int QUp(int i, int j, int k) const;
  int QDw(int i, int j, int k) const;
  int QPlus(int i, int w, int k) const;
  int QMinus(int i, int w, int k) const;
  int Thermal(int i, int j, int w, int k) const;
  int Charge(int i, int j, int w, int k) const;
  int Discharge(int i, int j, int w, int k) const;
  int Level(int i, int j, int w, int k) const;
  int Eps(int i, int k) const;
  // Throws std::logic_error when the commitment block was eliminated.
  int Commit(int i, int j, int w, int k) const;

  // First column of a kind and its block length.
  int Begin(VarKind kind) const { return offset_[static_cast<int>(kind)]; }
  int Count(VarKind kind) const;

  Entry Decode(int column) const;
  // e.g. "qDA[0,1]", "d[0,1,1,0]".
  std::string Name(int column) const;

 private:
  static constexpr int kNumKinds = 11;

  int num_da_ = 0;
  int num_ba_ = 0;
  int num_energy_ = 0;
  int horizon_ = 0;
  bool has_commitment_ = false;
  int offset_[kNumKinds + 1] = {};
};

std::string_view ToString(VarKind kind);

enum class RegulationDirection { kUp, kDown, kNone };

std::string_view ToString(RegulationDirection direction);

RegulationDirection ComputeRegulationDirection(
    double da_price, double ba_price, double tolerance = kPriceTieTolerance);

struct OfferModel {
  milp::MilpModel model;
  VariableIndex index;
  StrategyMode mode = StrategyMode::kActivePassive;
};

// Throws ValidationError for an invalid config or tree.
OfferModel BuildModel(const VppConfig& config, const ScenarioTree& tree,
                      StrategyMode mode);

// With zero minimum output and zero fixed cost the commitment binaries carry
// no information: they are dropped together with their rows, leaving d on
// [0, capacity]. Otherwise the model is returned unchanged.
OfferModel EliminateRedundantBinaries(const OfferModel& offer,
                                      const VppConfig& config);

class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StrategySolution {
  StrategyMode mode = StrategyMode::kActivePassive;
  // Column values; binaries are snapped to exactly 0 or 1.
  std::vector<double> values;
  double objective = 0.0;
  // Per-interval expected day-ahead income, active and passive balancing
  // income, and thermal cost.
  std::vector<double> rho_da;
  std::vector<double> rho_act;
  std::vector<double> rho_pas;
  std::vector<double> cost;
  milp::MilpStatus status = milp::MilpStatus::kOptimal;
  milp::BnbStats stats;

  double Value(int column) const { return values.at(column); }
};

// Recomputes the objective decomposition from the column values. Throws
// ExtractionError when a binary is further than the integrality tolerance
// from 0 or 1, or when the decomposition disagrees with `raw.objective`.
StrategySolution ExtractSolution(const OfferModel& offer,
                                 const milp::LpSolution& raw,
                                 const ScenarioTree& tree,
                                 const VppConfig& config);

struct StrategyResult {
  milp::MilpStatus status = milp::MilpStatus::kNumericalFailure;
  OfferModel offer;
  milp::BnbStats stats;
  // Present when the search produced an incumbent.
  std::optional<StrategySolution> solution;
};

// Build, eliminate redundant binaries, solve and extract.
StrategyResult SolveStrategy(const VppConfig& config, const ScenarioTree& tree,
                             StrategyMode mode,
                             const milp::MilpLimits& limits = {});

}  // namespace vppbid

#endif  // VPPBID_OFFER_OPTIMIZER_H_
