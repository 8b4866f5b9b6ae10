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

#include "vppbid/tree_generation.h"

#include <fmt/format.h>

namespace vppbid::scenario {

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GeneratedTree GenerateTree(const TreeGenerationSpec& spec) {
  spec.day_ahead.Validate();
  spec.balancing_spread.Validate();
  spec.energy.Validate();
  const int horizon = spec.day_ahead.horizon();
  if (spec.balancing_spread.horizon() != horizon ||
      spec.energy.horizon() != horizon) {
    throw ScenarioError(fmt::format(
        "forecast horizons differ: day-ahead {}, balancing {}, energy {}",
        horizon, spec.balancing_spread.horizon(), spec.energy.horizon()));
  }
  if (spec.samples < 1) throw ScenarioError("sample count must be at least 1");
  for (const int count :
       {spec.day_ahead_count, spec.balancing_count, spec.energy_count}) {
    if (count < 1 || count > spec.samples) {
      throw ScenarioError(fmt::format(
          "kept count {} outside [1, {}]", count, spec.samples));
    }
  }
  const CovarianceMatrix covariance = BuildCovariance(spec.range, horizon);

  GeneratedTree out;
  out.day_ahead = ReduceScenarios(
      SampleTrajectories(spec.day_ahead, covariance, spec.samples,
                         StreamSeed(spec.seed, 0)),
      spec.day_ahead_count);
  out.energy = ReduceScenarios(
      SampleTrajectories(spec.energy, covariance, spec.samples,
                         StreamSeed(spec.seed, 1)),
      spec.energy_count);
  for (int i = 0; i < out.day_ahead.size(); ++i) {
    TrajectorySet spread =
        SampleTrajectories(spec.balancing_spread, covariance, spec.samples,
                           StreamSeed(spec.seed, 2 + static_cast<unsigned>(i)));
    for (auto& trajectory : spread.trajectories) {
      for (int k = 0; k < horizon; ++k) {
        trajectory[k] += out.day_ahead.trajectories[i][k];
      }
    }
    out.balancing.push_back(ReduceScenarios(spread, spec.balancing_count));
  }
  return out;
}

ScenarioTree ToScenarioTree(const GeneratedTree& generated) {
  ScenarioTree tree;
  tree.da_prices = generated.day_ahead.trajectories;
  tree.da_prob = generated.day_ahead.weights;
  for (const auto& set : generated.balancing) {
    tree.ba_prices.push_back(set.trajectories);
    tree.ba_prob.push_back(set.weights);
  }
  tree.energy = generated.energy.trajectories;
  tree.energy_prob = generated.energy.weights;
  return tree;
}

}  // namespace vppbid::scenario
