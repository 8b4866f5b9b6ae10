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

// Test instances: the two-interval worked example, the case-study unit
// parameters, and seeded random instances.

#ifndef VPPBID_TESTS_SUPPORT_INSTANCES_H_
#define VPPBID_TESTS_SUPPORT_INSTANCES_H_

#include <cstdint>
#include <random>
#include <string>

#include "vppbid/market_model.h"
#include "vppbid/scenario_engine.h"

namespace vppbid::testing {

struct Instance {
  VppConfig config;
  ScenarioTree tree;
};

// Wind farm 40 MW, thermal 25 MW at 31 EUR/MWh, no storage; one day-ahead
// scenario, two balancing and two wind scenarios, all equiprobable.
Instance TwoIntervalExample();

// Thermal 0/70 MW, ramps 30/30, C = 45; storage 0..80 MWh, 30/30 MW,
// efficiency 0.81; renewable 50 MW.
VppConfig CaseStudyUnits(int horizon = 24);

struct RandomOptions {
  int num_da = 2;
  int num_ba = 2;
  int num_energy = 2;
  int horizon = 3;
  // Draw D_min > 0 or C0 > 0 for some instances, keeping commitment binaries.
  bool allow_commitment = false;
  bool with_storage = true;
};

// Integer-valued prices in [10, 50] and energies in [0, capacity];
// probabilities drawn and normalized.
Instance RandomInstance(std::mt19937_64& rng, const RandomOptions& options);

// Horizon-K forecasts shaped like a day of prices and wind, with quantiles
// from a normal approximation.
scenario::ProbabilisticForecast SyntheticPriceForecast(int horizon);
scenario::ProbabilisticForecast SyntheticSpreadForecast(int horizon);
scenario::ProbabilisticForecast SyntheticWindForecast(int horizon,
                                                      double capacity);

// Copula-sampled and reduced tree with the case-study units.
Instance SyntheticCaseStudy(int num_da, int num_ba, int num_energy,
                            std::uint64_t seed, int horizon = 24);

std::string SourceDir();

}  // namespace vppbid::testing

#endif  // VPPBID_TESTS_SUPPORT_INSTANCES_H_
