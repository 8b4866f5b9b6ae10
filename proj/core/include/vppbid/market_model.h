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

// Physical description of a virtual power plant (one thermal unit, one
// storage unit, one renewable unit) and the three-layer scenario tree it
// trades against. All quantities are per hourly interval, so MW and MWh are
// interchangeable.

#ifndef VPPBID_MARKET_MODEL_H_
#define VPPBID_MARKET_MODEL_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vppbid {

inline constexpr double kProbabilityTolerance = 1e-9;

struct ThermalUnit {
  double capacity = 0.0;
  double min_output = 0.0;
  double ramp_up = 0.0;
  double ramp_down = 0.0;
  double marginal_cost = 0.0;
  double fixed_cost = 0.0;
  // Output in the interval preceding the horizon.
  double initial_output = 0.0;
};

// A VPP without storage uses the all-zero default.
struct StorageUnit {
  double level_min = 0.0;
  double level_max = 0.0;
  double charge_max = 0.0;
  double discharge_max = 0.0;
  double efficiency = 1.0;
  // Defaults to level_min.
  std::optional<double> initial_level;
  // Optional floor on the level after the last interval.
  std::optional<double> terminal_level_min;

  double InitialLevel() const { return initial_level.value_or(level_min); }
};

struct RenewableUnit {
  double capacity = 0.0;
};

struct VppConfig {
  ThermalUnit thermal;
  StorageUnit storage;
  RenewableUnit renewable;
  int horizon = 1;
};

// Indexing: day-ahead scenario i, balancing scenario j (conditional on i),
// renewable scenario w, interval k.
struct ScenarioTree {
  std::vector<std::vector<double>> da_prices;               // [i][k]
  std::vector<double> da_prob;                              // [i]
  std::vector<std::vector<std::vector<double>>> ba_prices;  // [i][j][k]
  std::vector<std::vector<double>> ba_prob;                 // [i][j]
  std::vector<std::vector<double>> energy;                  // [w][k]
  std::vector<double> energy_prob;                          // [w]

  int num_day_ahead() const { return static_cast<int>(da_prob.size()); }
  // Balancing scenarios per day-ahead scenario; the builder requires the
  // same count for every i.
  int num_balancing() const {
    return ba_prob.empty() ? 0 : static_cast<int>(ba_prob.front().size());
  }
  int num_energy() const { return static_cast<int>(energy_prob.size()); }
};

enum class StrategyMode { kActivePassive, kActiveOnly, kPassiveOnly };

std::string_view ToString(StrategyMode mode);
// Accepts "active-passive", "active", "passive".
std::optional<StrategyMode> ParseStrategyMode(std::string_view text);

struct Violation {
  std::string code;
  std::string message;
};

// Every invariant violation of the config and the tree; empty means valid.
std::vector<Violation> ValidateConfig(const VppConfig& config,
                                      const ScenarioTree& tree);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Throws ValidationError if ValidateConfig reports anything.
void RequireValid(const VppConfig& config, const ScenarioTree& tree);

// Upper bound on any regulation or deviation volume in one interval:
// renewable + thermal capacity + charge and discharge limits.
double BigM(const VppConfig& config);

}  // namespace vppbid

#endif  // VPPBID_MARKET_MODEL_H_
