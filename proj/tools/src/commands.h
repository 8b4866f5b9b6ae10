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

// Subcommands of the vppbid tool. Each returns a process exit code and
// writes its human-readable summary to `out`; diagnostics go to the logger.

#ifndef VPPBID_TOOLS_COMMANDS_H_
#define VPPBID_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "vppbid/branch_and_bound.h"
#include "vppbid/market_model.h"

namespace vppbid::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInfeasible = 2,
  kExitLimit = 3,
  kExitValidation = 4,
  kExitIo = 5,
  // Unbounded model, numerical failure, or a limit hit before any incumbent.
  kExitSolverFailure = 6,
};

int ExitCodeFor(milp::MilpStatus status);

struct GenScenariosOptions {
  std::filesystem::path config;
  std::filesystem::path day_ahead_forecast;
  std::filesystem::path balancing_forecast;
  std::filesystem::path energy_forecast;
  std::uint64_t seed = 1;
  int samples = 300;
  int day_ahead_count = 10;
  int balancing_count = 6;
  int energy_count = 5;
  double range = 4.0;
  std::filesystem::path out_dir = ".";
};

struct SolveOptions {
  std::filesystem::path config;
  StrategyMode mode = StrategyMode::kActivePassive;
  milp::MilpLimits limits;
  std::filesystem::path out_dir = ".";
};

struct ExportOptions {
  std::filesystem::path config;
  StrategyMode mode = StrategyMode::kActivePassive;
  std::filesystem::path out_dir = ".";
};

struct ReportOptions {
  std::filesystem::path solution_dir = ".";
  // Defaults to the solution directory.
  std::filesystem::path out_dir;
};

int RunGenScenarios(const GenScenariosOptions& options, std::ostream& out);
int RunSolve(const SolveOptions& options, std::ostream& out);
int RunExportMps(const ExportOptions& options, std::ostream& out);
int RunReport(const ReportOptions& options, std::ostream& out);

// Fixed-decimal output with negative zero folded to zero.
std::string Money(double value);
std::string Quantity(double value);
std::string Probability(double value);

std::string_view ToolVersion();

}  // namespace vppbid::cli

#endif  // VPPBID_TOOLS_COMMANDS_H_
