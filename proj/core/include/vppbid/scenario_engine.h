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

// Scenario generation from per-interval quantile forecasts.
//
// Trajectories are drawn from a Gaussian copula: z ~ N(0, S) with the
// exponential covariance S[k][k'] = exp(-|k - k'| / range), and each
// component is mapped through the forecast's quantile function,
// value_k = F_k^-1(Phi(z_k)). Large sets are then shrunk by fast-forward
// selection with probability redistribution to the nearest kept trajectory.

#ifndef VPPBID_SCENARIO_ENGINE_H_
#define VPPBID_SCENARIO_ENGINE_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vppbid::scenario {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProbabilisticForecast {
  // Strictly increasing, inside (0, 1).
  std::vector<double> levels;
  // values[k][q]: quantile `levels[q]` at interval k, non-decreasing in q.
  std::vector<std::vector<double>> values;

  int horizon() const { return static_cast<int>(values.size()); }
  // Piecewise-linear in the level, clamped to the extreme quantiles outside
  // [levels.front(), levels.back()].
  double Quantile(int k, double probability) const;
  // Throws ScenarioError describing the first broken invariant.
  void Validate() const;
};

struct TrajectorySet {
  std::vector<std::vector<double>> trajectories;
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

// Dense symmetric matrix, row-major.
struct CovarianceMatrix {
  int size = 0;
  std::vector<double> data;

  double operator()(int r, int c) const { return data[r * size + c]; }
};

// Throws ScenarioError when range <= 0 or horizon < 1.
CovarianceMatrix BuildCovariance(double range, int horizon);

// Lower-triangular Cholesky factor; throws ScenarioError with
// "covariance not positive definite" on failure.
CovarianceMatrix CholeskyFactor(const CovarianceMatrix& covariance);

// Portable source of uniform and standard normal variates. Built on
// std::mt19937_64, whose output sequence the standard fixes; the
// transformations are implemented here rather than with std:: distributions,
// whose algorithms are implementation-defined.
class CopulaRng {
 public:
  explicit CopulaRng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in the open interval (0, 1).
  double Uniform();
  // Box-Muller; consecutive calls consume the pair.
  double Normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

double StandardNormalCdf(double z);

// n trajectories with weight 1/n each; identical for identical inputs.
TrajectorySet SampleTrajectories(const ProbabilisticForecast& forecast,
                                 const CovarianceMatrix& covariance, int count,
                                 std::uint64_t seed);

double TrajectoryDistance(const std::vector<double>& a,
                          const std::vector<double>& b);

struct ReductionTrace {
  // Indices into the input set in the order fast-forward selected them.
  std::vector<int> selection_order;
  // Weighted distance of the unselected mass after each selection step.
  std::vector<double> step_costs;
};

// Keeps `target` trajectories (in input order) and moves each discarded
// weight onto its nearest kept trajectory (ties: lowest index). Throws
// ScenarioError unless 1 <= target <= set.size().
TrajectorySet ReduceScenarios(const TrajectorySet& set, int target,
                              ReductionTrace* trace = nullptr);

}  // namespace vppbid::scenario

#endif  // VPPBID_SCENARIO_ENGINE_H_
