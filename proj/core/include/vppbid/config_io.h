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

// JSON configuration and CSV scenario files.
//
// A configuration document has the keys `thermal`, `storage`, `renewable`,
// `horizon`, and either `tree` (inline arrays named like the ScenarioTree
// fields) or `tree_files`:
//
//   "tree_files": {"day_ahead": "da.csv",
//                  "balancing": ["ba_0.csv", "ba_1.csv"],
//                  "energy": "energy.csv"}
//
// with one balancing file per day-ahead scenario and paths relative to the
// configuration file. Scenario files use the trajectory CSV layout
// `scenario,weight,k1..kK`.

#ifndef VPPBID_CONFIG_IO_H_
#define VPPBID_CONFIG_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vppbid/market_model.h"
#include "vppbid/scenario_engine.h"

namespace vppbid::io {

// Malformed content; the message names the file and line where known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file that cannot be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TreeFiles {
  std::string day_ahead;
  std::vector<std::string> balancing;
  std::string energy;
};

struct LoadedConfig {
  VppConfig config;
  ScenarioTree tree;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Shortest text that parses back to exactly `value`.
std::string FormatNumber(double value);

enum class TreeRequirement { kRequired, kOptional };

// `base_dir` resolves relative `tree_files` paths. With kOptional a document
// without `tree` and `tree_files` yields an empty tree.
LoadedConfig ParseConfig(std::string_view json_text,
                         const std::filesystem::path& base_dir,
                         std::string_view source = "config",
                         TreeRequirement tree = TreeRequirement::kRequired);
LoadedConfig LoadConfig(const std::filesystem::path& path,
                        TreeRequirement tree = TreeRequirement::kRequired);

// Inline tree.
std::string ConfigToJson(const VppConfig& config, const ScenarioTree& tree);
std::string ConfigToJson(const VppConfig& config, const TreeFiles& files);

// Header `k,q_<level>,...`; one row per interval, k counting from 1.
scenario::ProbabilisticForecast ParseForecastCsv(std::string_view text,
                                                 std::string_view source);
scenario::ProbabilisticForecast LoadForecastCsv(
    const std::filesystem::path& path);
std::string ForecastToCsv(const scenario::ProbabilisticForecast& forecast);

std::string TrajectoriesToCsv(const scenario::TrajectorySet& set);
scenario::TrajectorySet ParseTrajectoryCsv(std::string_view text,
                                           std::string_view source);
scenario::TrajectorySet LoadTrajectoryCsv(const std::filesystem::path& path);

// Minimal CSV splitting: comma separated, no quoting.
std::vector<std::string> SplitCsvLine(std::string_view line);
double ParseNumber(std::string_view text, std::string_view source, int line);

}  // namespace vppbid::io

#endif  // VPPBID_CONFIG_IO_H_
