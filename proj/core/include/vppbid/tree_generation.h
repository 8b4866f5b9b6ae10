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

// Sample-and-reduce pipeline producing a three-layer scenario tree.
//
// Day-ahead price and renewable trajectories are sampled from their own
// forecasts. Balancing prices are sampled per kept day-ahead trajectory i as
// lambda_DA(i) + spread, with the spread drawn from `balancing_spread`.

#ifndef VPPBID_TREE_GENERATION_H_
#define VPPBID_TREE_GENERATION_H_

#include <cstdint>
#include <vector>

#include "vppbid/market_model.h"
#include "vppbid/scenario_engine.h"

namespace vppbid::scenario {

struct TreeGenerationSpec {
  ProbabilisticForecast day_ahead;
  ProbabilisticForecast balancing_spread;
  ProbabilisticForecast energy;
  // Exponential covariance range, in intervals.
  double range = 4.0;
  int samples = 300;
  int day_ahead_count = 10;
  int balancing_count = 6;
  int energy_count = 5;
  std::uint64_t seed = 1;
};

struct GeneratedTree {
  TrajectorySet day_ahead;
  // One set per kept day-ahead trajectory.
  std::vector<TrajectorySet> balancing;
  TrajectorySet energy;
};

// Independent stream seeds (splitmix64 of seed and stream id): stream 0 is
// the day-ahead layer, 1 the renewable layer, 2 + i the balancing layer of
// day-ahead scenario i.
std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream);

// Throws ScenarioError on invalid forecasts, mismatched horizons or counts
// outside [1, samples].
GeneratedTree GenerateTree(const TreeGenerationSpec& spec);

ScenarioTree ToScenarioTree(const GeneratedTree& generated);

}  // namespace vppbid::scenario

#endif  // VPPBID_TREE_GENERATION_H_
