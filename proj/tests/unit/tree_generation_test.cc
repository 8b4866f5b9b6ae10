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

#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "instances.h"

namespace vppbid::scenario {
namespace {

TreeGenerationSpec SmallSpec() {
  TreeGenerationSpec spec;
  spec.day_ahead = testing::SyntheticPriceForecast(24);
  spec.balancing_spread = testing::SyntheticSpreadForecast(24);
  spec.energy = testing::SyntheticWindForecast(24, 50.0);
  spec.samples = 60;
  spec.day_ahead_count = 4;
  spec.balancing_count = 3;
  spec.energy_count = 2;
  spec.seed = 7;
  return spec;
}

double Sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

TEST(StreamSeed, DistinctAcrossStreamsAndSeeds) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
      seen.insert(StreamSeed(seed, stream));
    }
  }
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_EQ(StreamSeed(5, 3), StreamSeed(5, 3));
}

TEST(GenerateTree, CountsAndWeights) {
  const auto tree = GenerateTree(SmallSpec());
  EXPECT_EQ(tree.day_ahead.size(), 4);
  EXPECT_EQ(tree.energy.size(), 2);
  ASSERT_EQ(tree.balancing.size(), 4u);
  EXPECT_NEAR(Sum(tree.day_ahead.weights), 1.0, 1e-12);
  EXPECT_NEAR(Sum(tree.energy.weights), 1.0, 1e-12);
  for (const auto& set : tree.balancing) {
    EXPECT_EQ(set.size(), 3);
    EXPECT_NEAR(Sum(set.weights), 1.0, 1e-12);
  }
}

TEST(GenerateTree, ReproducibleFromSeed) {
  const auto a = GenerateTree(SmallSpec());
  const auto b = GenerateTree(SmallSpec());
  EXPECT_EQ(a.day_ahead.trajectories, b.day_ahead.trajectories);
  EXPECT_EQ(a.day_ahead.weights, b.day_ahead.weights);
  EXPECT_EQ(a.energy.trajectories, b.energy.trajectories);
  for (size_t i = 0; i < a.balancing.size(); ++i) {
    EXPECT_EQ(a.balancing[i].trajectories, b.balancing[i].trajectories);
  }
  auto spec = SmallSpec();
  spec.seed = 8;
  EXPECT_NE(GenerateTree(spec).day_ahead.trajectories,
            a.day_ahead.trajectories);
}

TEST(GenerateTree, LayersMatchSeparatePipeline) {
  const auto spec = SmallSpec();
  const auto tree = GenerateTree(spec);
  const auto cov = BuildCovariance(spec.range, 24);
  const auto da = ReduceScenarios(
      SampleTrajectories(spec.day_ahead, cov, spec.samples,
                         StreamSeed(spec.seed, 0)),
      spec.day_ahead_count);
  EXPECT_EQ(tree.day_ahead.trajectories, da.trajectories);
  const auto energy = ReduceScenarios(
      SampleTrajectories(spec.energy, cov, spec.samples,
                         StreamSeed(spec.seed, 1)),
      spec.energy_count);
  EXPECT_EQ(tree.energy.trajectories, energy.trajectories);
  auto spread = SampleTrajectories(spec.balancing_spread, cov, spec.samples,
                                   StreamSeed(spec.seed, 3));
  for (auto& t : spread.trajectories) {
    for (int k = 0; k < 24; ++k) t[k] += da.trajectories[1][k];
  }
  EXPECT_EQ(tree.balancing[1].trajectories,
            ReduceScenarios(spread, spec.balancing_count).trajectories);
}

TEST(GenerateTree, LayersAreIndependent) {
  auto spec = SmallSpec();
  const auto base = GenerateTree(spec);
  spec.energy = testing::SyntheticWindForecast(24, 30.0);
  spec.energy_count = 3;
  const auto changed = GenerateTree(spec);
  EXPECT_EQ(base.day_ahead.trajectories, changed.day_ahead.trajectories);
  for (size_t i = 0; i < base.balancing.size(); ++i) {
    EXPECT_EQ(base.balancing[i].trajectories,
              changed.balancing[i].trajectories);
  }
}

TEST(GenerateTree, ZeroSpreadGivesBalancingEqualToDayAhead) {
  auto spec = SmallSpec();
  spec.balancing_spread.levels = {0.5};
  spec.balancing_spread.values.assign(24, {0.0});
  const auto tree = GenerateTree(spec);
  for (int i = 0; i < tree.day_ahead.size(); ++i) {
    ASSERT_EQ(tree.balancing[i].size(), 3);
    for (const auto& t : tree.balancing[i].trajectories) {
      EXPECT_EQ(t, tree.day_ahead.trajectories[i]);
    }
  }
}

TEST(GenerateTree, RejectsMismatchedInputs) {
  auto spec = SmallSpec();
  spec.energy = testing::SyntheticWindForecast(12, 50.0);
  EXPECT_THROW(GenerateTree(spec), ScenarioError);
  spec = SmallSpec();
  spec.day_ahead_count = 61;
  EXPECT_THROW(GenerateTree(spec), ScenarioError);
  spec = SmallSpec();
  spec.balancing_count = 0;
  EXPECT_THROW(GenerateTree(spec), ScenarioError);
  spec = SmallSpec();
  spec.samples = 0;
  EXPECT_THROW(GenerateTree(spec), ScenarioError);
  spec = SmallSpec();
  spec.range = 0.0;
  EXPECT_THROW(GenerateTree(spec), ScenarioError);
}

TEST(ToScenarioTree, ProducesValidCaseStudyTree) {
  const auto tree = ToScenarioTree(GenerateTree(SmallSpec()));
  EXPECT_EQ(tree.num_day_ahead(), 4);
  EXPECT_EQ(tree.num_balancing(), 3);
  EXPECT_EQ(tree.num_energy(), 2);
  EXPECT_TRUE(ValidateConfig(testing::CaseStudyUnits(), tree).empty());
}

}  // namespace
}  // namespace vppbid::scenario
