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

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.h"

namespace {

using vppbid::StrategyMode;

const std::map<std::string, StrategyMode> kModes = {
    {"active-passive", StrategyMode::kActivePassive},
    {"active", StrategyMode::kActiveOnly},
    {"passive", StrategyMode::kPassiveOnly},
};

// VPP_LOG in {error, info, debug}; anything else falls back to info.
void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("vppbid");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  const char* env = std::getenv("VPP_LOG");
  if (env == nullptr) return;
  const std::string level(env);
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level != "info") {
    spdlog::warn("unknown VPP_LOG value '{}', using info", level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Active/Passive offering strategies for a virtual power plant"};
  app.set_version_flag("--version", std::string(vppbid::cli::ToolVersion()));
  app.require_subcommand(1);

  vppbid::cli::GenScenariosOptions gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-scenarios", "Sample and reduce a scenario tree from forecasts");
  gen_cmd->add_option("--config", gen.config, "Unit configuration (JSON)")
      ->required();
  gen_cmd->add_option("--da-forecast", gen.day_ahead_forecast,
                      "Day-ahead price quantiles (CSV)")
      ->required();
  gen_cmd->add_option("--ba-forecast", gen.balancing_forecast,
                      "Balancing minus day-ahead price quantiles (CSV)")
      ->required();
  gen_cmd->add_option("--energy-forecast", gen.energy_forecast,
                      "Renewable production quantiles (CSV)")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--samples", gen.samples, "Trajectories sampled per layer")
      ->capture_default_str();
  gen_cmd->add_option("--da-count", gen.day_ahead_count,
                      "Day-ahead scenarios kept")
      ->capture_default_str();
  gen_cmd->add_option("--ba-count", gen.balancing_count,
                      "Balancing scenarios kept per day-ahead scenario")
      ->capture_default_str();
  gen_cmd->add_option("--energy-count", gen.energy_count,
                      "Renewable scenarios kept")
      ->capture_default_str();
  gen_cmd->add_option("--range", gen.range,
                      "Exponential covariance range (intervals)")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")
      ->capture_default_str();

  vppbid::cli::SolveOptions solve;
  std::string solve_mode = "active-passive";
  double max_seconds = 0.0;
  auto* solve_cmd =
      app.add_subcommand("solve", "Solve the offering problem in one mode");
  solve_cmd->add_option("--config", solve.config, "Configuration with tree")
      ->required();
  solve_cmd->add_option("--mode", solve_mode, "Strategy mode")
      ->check(CLI::IsMember({"active-passive", "active", "passive"}))
      ->capture_default_str();
  solve_cmd->add_option("--max-seconds", max_seconds,
                        "Wall-clock limit (0: none)");
  solve_cmd->add_option("--gap", solve.limits.gap_target,
                        "Relative gap target")
      ->capture_default_str();
  solve_cmd->add_option("--max-nodes", solve.limits.max_nodes, "Node limit")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out_dir, "Output directory")
      ->capture_default_str();

  vppbid::cli::ExportOptions mps;
  std::string mps_mode = "active-passive";
  auto* mps_cmd =
      app.add_subcommand("export-mps", "Write the model in MPS format");
  mps_cmd->add_option("--config", mps.config, "Configuration with tree")
      ->required();
  mps_cmd->add_option("--mode", mps_mode, "Strategy mode")
      ->check(CLI::IsMember({"active-passive", "active", "passive"}))
      ->capture_default_str();
  mps_cmd->add_option("--out", mps.out_dir, "Output directory")
      ->capture_default_str();

  vppbid::cli::ReportOptions report;
  auto* report_cmd =
      app.add_subcommand("report", "Render SVG charts from solve outputs");
  report_cmd->add_option("--dir", report.solution_dir,
                         "Directory written by solve")
      ->capture_default_str();
  report_cmd->add_option("--out", report.out_dir,
                         "Output directory (default: --dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vppbid::cli::kExitValidation;
  }

  if (*gen_cmd) return vppbid::cli::RunGenScenarios(gen, std::cout);
  if (*solve_cmd) {
    solve.mode = kModes.at(solve_mode);
    if (max_seconds > 0.0) solve.limits.max_seconds = max_seconds;
    return vppbid::cli::RunSolve(solve, std::cout);
  }
  if (*mps_cmd) {
    mps.mode = kModes.at(mps_mode);
    return vppbid::cli::RunExportMps(mps, std::cout);
  }
  return vppbid::cli::RunReport(report, std::cout);
}
