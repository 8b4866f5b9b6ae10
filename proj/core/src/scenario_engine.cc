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

#include "vppbid/scenario_engine.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <fmt/format.h>

namespace vppbid::scenario {

double ProbabilisticForecast::Quantile(int k, double probability) const {
  const std::vector<double>& row = values.at(k);
  if (probability <= levels.front()) return row.front();
  if (probability >= levels.back()) return row.back();
  const auto upper =
      std::upper_bound(levels.begin(), levels.end(), probability);
  const size_t q = static_cast<size_t>(upper - levels.begin());
  const double t = (probability - levels[q - 1]) / (levels[q] - levels[q - 1]);
  return row[q - 1] + t * (row[q] - row[q - 1]);
}

void ProbabilisticForecast::Validate() const {
  if (levels.empty()) throw ScenarioError("forecast has no quantile levels");
  for (size_t q = 0; q < levels.size(); ++q) {
    if (!(levels[q] > 0.0 && levels[q] < 1.0)) {
      throw ScenarioError(
          fmt::format("quantile level {} outside (0, 1)", levels[q]));
    }
    if (q > 0 && levels[q] <= levels[q - 1]) {
      throw ScenarioError("quantile levels must be strictly increasing");
    }
  }
  if (values.empty()) throw ScenarioError("forecast has no intervals");
  for (size_t k = 0; k < values.size(); ++k) {
    if (values[k].size() != levels.size()) {
      throw ScenarioError(fmt::format(
          "interval {} has {} quantiles, expected {}", k + 1,
          values[k].size(), levels.size()));
    }
    for (size_t q = 1; q < values[k].size(); ++q) {
      if (values[k][q] < values[k][q - 1]) {
        throw ScenarioError(fmt::format(
            "interval {} quantiles are not non-decreasing", k + 1));
      }
    }
  }
}

CovarianceMatrix BuildCovariance(double range, int horizon) {
  if (!(range > 0.0)) {
    throw ScenarioError(
        fmt::format("covariance range must be positive, got {}", range));
  }
  if (horizon < 1) throw ScenarioError("horizon must be at least 1");
  CovarianceMatrix out{horizon, std::vector<double>(horizon * horizon)};
  for (int r = 0; r < horizon; ++r) {
    for (int c = 0; c < horizon; ++c) {
      out.data[r * horizon + c] = std::exp(-std::abs(r - c) / range);
    }
  }
  return out;
}

CovarianceMatrix CholeskyFactor(const CovarianceMatrix& covariance) {
  const int n = covariance.size;
  Eigen::MatrixXd matrix(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) matrix(r, c) = covariance(r, c);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(matrix);
  if (llt.info() != Eigen::Success) {
    throw ScenarioError("covariance not positive definite");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  CovarianceMatrix out{n, std::vector<double>(n * n)};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out.data[r * n + c] = lower(r, c);
  }
  return out;
}

double CopulaRng::Uniform() {
  // 53 random bits, shifted by half an ulp to stay strictly inside (0, 1).
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double CopulaRng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(Uniform()));
  const double angle = 2.0 * std::numbers::pi * Uniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double StandardNormalCdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

TrajectorySet SampleTrajectories(const ProbabilisticForecast& forecast,
                                 const CovarianceMatrix& covariance, int count,
                                 std::uint64_t seed) {
  forecast.Validate();
  if (count < 1) throw ScenarioError("sample count must be at least 1");
  if (covariance.size != forecast.horizon()) {
    throw ScenarioError(fmt::format(
        "covariance is {0}x{0} but the forecast has {1} intervals",
        covariance.size, forecast.horizon()));
  }
  const CovarianceMatrix factor = CholeskyFactor(covariance);
  const int horizon = forecast.horizon();

  CopulaRng rng(seed);
  TrajectorySet out;
  out.trajectories.reserve(count);
  std::vector<double> noise(horizon);
  for (int s = 0; s < count; ++s) {
    for (double& g : noise) g = rng.Normal();
    std::vector<double> trajectory(horizon);
    for (int k = 0; k < horizon; ++k) {
      double z = 0.0;
      for (int c = 0; c <= k; ++c) z += factor(k, c) * noise[c];
      trajectory[k] = forecast.Quantile(k, StandardNormalCdf(z));
    }
    out.trajectories.push_back(std::move(trajectory));
  }
  out.weights.assign(count, 1.0 / count);
  return out;
}

double TrajectoryDistance(const std::vector<double>& a,
                          const std::vector<double>& b) {
  double total = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    total += d * d;
  }
  return std::sqrt(total);
}

TrajectorySet ReduceScenarios(const TrajectorySet& set, int target,
                              ReductionTrace* trace) {
  const int n = set.size();
  if (target < 1 || target > n) {
    throw ScenarioError(fmt::format(
        "reduction target {} outside [1, {}]", target, n));
  }
  if (trace != nullptr) *trace = ReductionTrace{};

  std::vector<double> distance(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s) {
    for (int u = 0; u < n; ++u) {
      distance[s * n + u] =
          TrajectoryDistance(set.trajectories[s], set.trajectories[u]);
    }
  }
  // reduced[s * n + u]: distance from s to the selected set extended by u.
  std::vector<double> reduced = distance;
  std::vector<bool> selected(n, false);

  for (int step = 0; step < target; ++step) {
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int u = 0; u < n; ++u) {
      if (selected[u]) continue;
      double cost = 0.0;
      for (int s = 0; s < n; ++s) {
        if (!selected[s] && s != u) cost += set.weights[s] * reduced[s * n + u];
      }
      if (cost < best_cost) {
        best_cost = cost;
        best = u;
      }
    }
    selected[best] = true;
    if (trace != nullptr) {
      trace->selection_order.push_back(best);
      trace->step_costs.push_back(best_cost);
    }
    for (int s = 0; s < n; ++s) {
      if (selected[s]) continue;
      for (int u = 0; u < n; ++u) {
        if (!selected[u]) {
          reduced[s * n + u] =
              std::min(reduced[s * n + u], reduced[s * n + best]);
        }
      }
    }
  }

  std::vector<int> kept;
  for (int u = 0; u < n; ++u) {
    if (selected[u]) kept.push_back(u);
  }
  std::vector<double> weight(n, 0.0);
  for (int u : kept) weight[u] = set.weights[u];
  for (int s = 0; s < n; ++s) {
    if (selected[s]) continue;
    int nearest = kept.front();
    for (int u : kept) {
      if (distance[s * n + u] < distance[s * n + nearest]) nearest = u;
    }
    weight[nearest] += set.weights[s];
  }

  TrajectorySet out;
  for (int u : kept) {
    out.trajectories.push_back(set.trajectories[u]);
    out.weights.push_back(weight[u]);
  }
  return out;
}

}  // namespace vppbid::scenario
