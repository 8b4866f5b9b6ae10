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

#include "vppbid/market_model.h"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace vppbid {

std::string_view ToString(StrategyMode mode) {
  switch (mode) {
    case StrategyMode::kActivePassive:
      return "active-passive";
    case StrategyMode::kActiveOnly:
      return "active";
    case StrategyMode::kPassiveOnly:
      return "passive";
  }
  return "unknown";
}

std::optional<StrategyMode> ParseStrategyMode(std::string_view text) {
  if (text == "active-passive") return StrategyMode::kActivePassive;
  if (text == "active") return StrategyMode::kActiveOnly;
  if (text == "passive") return StrategyMode::kPassiveOnly;
  return std::nullopt;
}

namespace {

class Checker {
 public:
  void Require(bool ok, std::string code, std::string message) {
    if (!ok) out_.push_back(Violation{std::move(code), std::move(message)});
  }

  void Probabilities(const std::vector<double>& p, const std::string& code,
                     const std::string& what) {
    bool nonnegative = true;
    for (double v : p) nonnegative = nonnegative && v >= 0.0 && std::isfinite(v);
    Require(nonnegative, code + "_negative",
            fmt::format("{} probabilities must be non-negative", what));
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    Require(std::abs(sum - 1.0) <= kProbabilityTolerance, code + "_sum",
            fmt::format("{} probabilities do not sum to 1 (sum = {})", what,
                        sum));
  }

  std::vector<Violation> Take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

bool Finite(double v) { return std::isfinite(v); }

}  // namespace

std::vector<Violation> ValidateConfig(const VppConfig& config,
                                      const ScenarioTree& tree) {
  Checker check;
  const ThermalUnit& t = config.thermal;
  check.Require(Finite(t.capacity) && t.capacity >= 0.0,
                "thermal.capacity_out_of_range",
                "thermal capacity out of range");
  check.Require(Finite(t.min_output) && t.min_output >= 0.0 &&
                    t.min_output <= t.capacity,
                "thermal.min_output_out_of_range",
                "thermal minimum output out of range");
  check.Require(Finite(t.ramp_up) && t.ramp_up >= 0.0,
                "thermal.ramp_up_negative", "ramp-up limit must be >= 0");
  check.Require(Finite(t.ramp_down) && t.ramp_down >= 0.0,
                "thermal.ramp_down_negative", "ramp-down limit must be >= 0");
  check.Require(Finite(t.marginal_cost) && t.marginal_cost >= 0.0,
                "thermal.marginal_cost_negative",
                "marginal cost must be >= 0");
  check.Require(Finite(t.fixed_cost) && t.fixed_cost >= 0.0,
                "thermal.fixed_cost_negative", "fixed cost must be >= 0");
  check.Require(Finite(t.initial_output) && t.initial_output >= 0.0 &&
                    t.initial_output <= t.capacity,
                "thermal.initial_output_out_of_range",
                "initial thermal output out of range");

  const StorageUnit& s = config.storage;
  check.Require(Finite(s.level_min) && Finite(s.level_max) &&
                    s.level_min >= 0.0 && s.level_min <= s.level_max,
                "storage.level_bounds_out_of_range",
                "storage level bounds out of range");
  check.Require(Finite(s.charge_max) && s.charge_max >= 0.0,
                "storage.charge_max_negative", "charge limit must be >= 0");
  check.Require(Finite(s.discharge_max) && s.discharge_max >= 0.0,
                "storage.discharge_max_negative",
                "discharge limit must be >= 0");
  check.Require(Finite(s.efficiency) && s.efficiency > 0.0 &&
                    s.efficiency <= 1.0,
                "storage.efficiency_out_of_range", "efficiency out of range");
  const double initial = s.InitialLevel();
  check.Require(Finite(initial) && initial >= s.level_min &&
                    initial <= s.level_max,
                "storage.initial_level_out_of_range",
                "initial storage level out of range");
  if (s.terminal_level_min) {
    check.Require(*s.terminal_level_min >= s.level_min &&
                      *s.terminal_level_min <= s.level_max,
                  "storage.terminal_level_out_of_range",
                  "terminal storage floor out of range");
  }
  check.Require(Finite(config.renewable.capacity) &&
                    config.renewable.capacity >= 0.0,
                "renewable.capacity_negative",
                "renewable capacity must be >= 0");
  check.Require(config.horizon >= 1, "horizon.empty",
                "horizon must contain at least one interval");

  const size_t horizon = config.horizon >= 1 ? config.horizon : 0;
  const int num_da = tree.num_day_ahead();
  check.Require(num_da >= 1, "tree.da_empty",
                "tree needs at least one day-ahead scenario");
  check.Require(tree.num_energy() >= 1, "tree.energy_empty",
                "tree needs at least one energy scenario");
  check.Require(tree.da_prices.size() == tree.da_prob.size(),
                "tree.da_shape", "day-ahead prices and probabilities differ "
                                 "in scenario count");
  check.Probabilities(tree.da_prob, "tree.da_prob", "day-ahead");
  bool da_lengths = true;
  for (const auto& trajectory : tree.da_prices) {
    da_lengths = da_lengths && trajectory.size() == horizon;
  }
  check.Require(da_lengths, "tree.da_length",
                "day-ahead trajectory length differs from horizon");

  check.Require(tree.ba_prices.size() == tree.da_prob.size() &&
                    tree.ba_prob.size() == tree.da_prob.size(),
                "tree.ba_shape",
                "balancing layer needs one scenario set per day-ahead "
                "scenario");
  bool ba_shape = true;
  bool ba_lengths = true;
  for (size_t i = 0; i < tree.ba_prob.size(); ++i) {
    ba_shape = ba_shape && tree.ba_prob[i].size() == tree.ba_prob[0].size() &&
               !tree.ba_prob[i].empty();
    if (i < tree.ba_prices.size()) {
      ba_shape = ba_shape && tree.ba_prices[i].size() == tree.ba_prob[i].size();
      for (const auto& trajectory : tree.ba_prices[i]) {
        ba_lengths = ba_lengths && trajectory.size() == horizon;
      }
    }
    check.Probabilities(tree.ba_prob[i], fmt::format("tree.ba_prob[{}]", i),
                        fmt::format("balancing (given day-ahead {})", i));
  }
  check.Require(ba_shape, "tree.ba_count",
                "every day-ahead scenario needs the same non-zero number of "
                "balancing scenarios");
  check.Require(ba_lengths, "tree.ba_length",
                "balancing trajectory length differs from horizon");

  check.Require(tree.energy.size() == tree.energy_prob.size(),
                "tree.energy_shape",
                "energy trajectories and probabilities differ in count");
  check.Probabilities(tree.energy_prob, "tree.energy_prob", "energy");
  bool energy_lengths = true;
  bool energy_range = true;
  for (const auto& trajectory : tree.energy) {
    energy_lengths = energy_lengths && trajectory.size() == horizon;
    for (double e : trajectory) {
      energy_range = energy_range && Finite(e) && e >= 0.0 &&
                     e <= config.renewable.capacity;
    }
  }
  check.Require(energy_lengths, "tree.energy_length",
                "energy trajectory length differs from horizon");
  check.Require(energy_range, "tree.energy_out_of_range",
                "energy outside [0, renewable capacity]");

  bool prices_finite = true;
  for (const auto& trajectory : tree.da_prices) {
    for (double v : trajectory) prices_finite = prices_finite && Finite(v);
  }
  for (const auto& per_i : tree.ba_prices) {
    for (const auto& trajectory : per_i) {
      for (double v : trajectory) prices_finite = prices_finite && Finite(v);
    }
  }
  check.Require(prices_finite, "tree.price_not_finite",
                "prices must be finite");
  return check.Take();
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string text = "invalid configuration:";
        for (const Violation& v : violations) {
          text += fmt::format(" [{}] {};", v.code, v.message);
        }
        return text;
      }()),
      violations_(std::move(violations)) {}

void RequireValid(const VppConfig& config, const ScenarioTree& tree) {
  auto violations = ValidateConfig(config, tree);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

double BigM(const VppConfig& config) {
  return config.renewable.capacity + config.thermal.capacity +
         config.storage.charge_max + config.storage.discharge_max;
}

}  // namespace vppbid
