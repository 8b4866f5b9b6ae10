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

// Static SVG charts. Elements carry a class naming their role ("active",
// "passive", "step", "riser") so tests and stylesheets can select them.

#ifndef VPPBID_TOOLS_SVG_H_
#define VPPBID_TOOLS_SVG_H_

#include <string>
#include <string_view>
#include <vector>

#include "vppbid/settlement.h"

namespace vppbid::cli {

struct ProbabilityPoint {
  int k = 0;
  double prob_active = 0.0;
};

// One stacked bar per interval: active share below, passive share above.
std::string ProbabilityChartSvg(const std::vector<ProbabilityPoint>& points);

struct CurvePanel {
  int k = 0;
  // Sorted by price.
  std::vector<CurveStep> steps;
  bool down_regulation = false;
};

// Dispatched quantity against realized price, one panel per interval. Each
// step is exactly one horizontal segment; vertical risers join them.
std::string CurvePlotSvg(std::string_view title,
                         const std::vector<CurvePanel>& panels);

}  // namespace vppbid::cli

#endif  // VPPBID_TOOLS_SVG_H_
