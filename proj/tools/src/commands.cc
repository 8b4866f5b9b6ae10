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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <system_error>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "svg.h"
#include "vppbid/config_io.h"
#include "vppbid/mps.h"
#include "vppbid/offer_optimizer.h"
#include "vppbid/scenario_engine.h"
#include "vppbid/settlement.h"
#include "vppbid/strategy_report.h"
#include "vppbid/tree_generation.h"

#ifndef VPPBID_VERSION
#define VPPBID_VERSION "0.0.0"
#endif

namespace vppbid::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kReportHeader = "k,prob_active,rho_da,rho_act,rho_pas,cost";
constexpr const char* kCurveHeader = "market,k,price,quantity";

std::string Fixed(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  if (std::abs(value) * scale < 0.5) value = 0.0;
  return fmt::format("{:.{}f}", value, digits);
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw io::IoError(
        fmt::format("cannot create directory '{}'", dir.string()));
  }
}

json LimitsJson(const milp::MilpLimits& limits) {
  json out;
  out["max_nodes"] = limits.max_nodes;
  out["max_seconds"] =
      std::isfinite(limits.max_seconds) ? json(limits.max_seconds) : json();
  out["gap"] = limits.gap_target;
  return out;
}

json BaseManifest(std::string_view command, const fs::path& config,
                  const fs::path& out_dir) {
  json m;
  m["command"] = command;
  m["config"] = config.string();
  m["output_dir"] = out_dir.string();
  m["tool_version"] = ToolVersion();
  m["seed"] = nullptr;
  m["scenario_counts"] = nullptr;
  return m;
}

// A tree written by gen-scenarios sits next to its manifest; carry the seed
// and counts forward so every artifact records them.
void InheritScenarioProvenance(const fs::path& config, json& manifest) {
  const fs::path source = config.parent_path() / "manifest.json";
  std::error_code ec;
  if (!fs::is_regular_file(source, ec)) return;
  try {
    const json upstream = json::parse(io::ReadFile(source));
    if (upstream.value("command", "") != "gen-scenarios") return;
    if (upstream.contains("seed")) manifest["seed"] = upstream["seed"];
    if (upstream.contains("scenario_counts")) {
      manifest["scenario_counts"] = upstream["scenario_counts"];
    }
  } catch (const json::exception& e) {
    spdlog::warn("ignoring unreadable '{}': {}", source.string(), e.what());
  }
}

void WriteManifest(const fs::path& out_dir, const json& manifest) {
  io::WriteFile(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string CurveLabel(const OfferCurve& curve) {
  if (curve.market == Market::kDayAhead) return "DA";
  return fmt::format("{}:{}", ToString(curve.market), curve.scenario);
}

// Runs `body` and maps the library's exception types onto exit codes.
int Guarded(std::string_view command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) {
      spdlog::error("{}: {}: {}", command, v.code, v.message);
    }
    if (e.violations().empty()) spdlog::error("{}: {}", command, e.what());
    return kExitValidation;
  } catch (const io::ParseError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitValidation;
  } catch (const scenario::ScenarioError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitValidation;
  } catch (const io::IoError& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitIo;
  }
}

struct ReportRow {
  int k = 0;
  double prob_active = 0.0;
  double rho_da = 0.0;
  double rho_act = 0.0;
  double rho_pas = 0.0;
  double cost = 0.0;
};

fs::path RequireFile(const fs::path& dir, std::string_view name) {
  const fs::path path = dir / name;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw io::IoError(fmt::format("file not found: expected '{}' in '{}'",
                                  name, dir.string()));
  }
  return path;
}

// Header line and data lines; an empty file has neither.
std::vector<std::vector<std::string>> CsvRows(const fs::path& path,
                                              std::string_view header) {
  const std::string text = io::ReadFile(path);
  std::vector<std::vector<std::string>> rows;
  size_t start = 0;
  int line = 0;
  bool seen_header = false;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view content(text.data() + start, end - start);
    start = end + 1;
    ++line;
    if (!content.empty() && content.back() == '\r') content.remove_suffix(1);
    if (content.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (!seen_header) {
      if (content != header) {
        throw io::ParseError(fmt::format("{}:{}: expected header '{}'",
                                         path.string(), line, header));
      }
      seen_header = true;
      continue;
    }
    auto cells = io::SplitCsvLine(content);
    const size_t expected = io::SplitCsvLine(header).size();
    if (cells.size() != expected) {
      throw io::ParseError(fmt::format("{}:{}: expected {} fields, found {}",
                                       path.string(), line, expected,
                                       cells.size()));
    }
    cells.push_back(std::to_string(line));
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string FileSafe(std::string label) {
  for (char& c : label) {
    if (c == ':') c = '_';
  }
  return label;
}

}  // namespace

std::string Money(double value) { return Fixed(value, 2); }
std::string Quantity(double value) { return Fixed(value, 3); }
std::string Probability(double value) { return Fixed(value, 6); }

std::string_view ToolVersion() { return VPPBID_VERSION; }

int ExitCodeFor(milp::MilpStatus status) {
  switch (status) {
    case milp::MilpStatus::kOptimal:
      return kExitOk;
    case milp::MilpStatus::kInfeasible:
      return kExitInfeasible;
    case milp::MilpStatus::kLimitWithIncumbent:
      return kExitLimit;
    case milp::MilpStatus::kNoIncumbent:
    case milp::MilpStatus::kUnbounded:
    case milp::MilpStatus::kNumericalFailure:
      return kExitSolverFailure;
  }
  return kExitSolverFailure;
}

int RunGenScenarios(const GenScenariosOptions& o, std::ostream& out) {
  return Guarded("gen-scenarios", [&] {
    const io::LoadedConfig loaded =
        io::LoadConfig(o.config, io::TreeRequirement::kOptional);
    scenario::TreeGenerationSpec spec;
    spec.day_ahead = io::LoadForecastCsv(o.day_ahead_forecast);
    spec.balancing_spread = io::LoadForecastCsv(o.balancing_forecast);
    spec.energy = io::LoadForecastCsv(o.energy_forecast);
    if (spec.day_ahead.horizon() != loaded.config.horizon) {
      throw io::ParseError(fmt::format(
          "{}: {} intervals, but the config horizon is {}",
          o.day_ahead_forecast.string(), spec.day_ahead.horizon(),
          loaded.config.horizon));
    }
    spec.range = o.range;
    spec.samples = o.samples;
    spec.day_ahead_count = o.day_ahead_count;
    spec.balancing_count = o.balancing_count;
    spec.energy_count = o.energy_count;
    spec.seed = o.seed;
    spdlog::info("sampling {} trajectories per layer, seed {}", o.samples,
                 o.seed);
    const scenario::GeneratedTree generated = scenario::GenerateTree(spec);
    const ScenarioTree tree = scenario::ToScenarioTree(generated);
    RequireValid(loaded.config, tree);

    EnsureDirectory(o.out_dir);
    io::TreeFiles files;
    files.day_ahead = "day_ahead.csv";
    files.energy = "energy.csv";
    io::WriteFile(o.out_dir / files.day_ahead,
                  io::TrajectoriesToCsv(generated.day_ahead));
    io::WriteFile(o.out_dir / files.energy,
                  io::TrajectoriesToCsv(generated.energy));
    for (size_t i = 0; i < generated.balancing.size(); ++i) {
      files.balancing.push_back(fmt::format("balancing_{}.csv", i));
      io::WriteFile(o.out_dir / files.balancing.back(),
                    io::TrajectoriesToCsv(generated.balancing[i]));
    }
    io::WriteFile(o.out_dir / "config.json",
                  io::ConfigToJson(loaded.config, files));

    json manifest = BaseManifest("gen-scenarios", o.config, o.out_dir);
    manifest["seed"] = o.seed;
    manifest["covariance_range"] = o.range;
    manifest["forecasts"] = {
        {"day_ahead", o.day_ahead_forecast.string()},
        {"balancing", o.balancing_forecast.string()},
        {"energy", o.energy_forecast.string()}};
    manifest["scenario_counts"] = {
        {"day_ahead", {{"sampled", o.samples}, {"kept", o.day_ahead_count}}},
        {"balancing", {{"sampled", o.samples}, {"kept", o.balancing_count}}},
        {"energy", {{"sampled", o.samples}, {"kept", o.energy_count}}}};
    WriteManifest(o.out_dir, manifest);

    out << fmt::format("tree {}x{}x{} ({} paths) written to {}\n",
                       tree.num_day_ahead(), tree.num_balancing(),
                       tree.num_energy(),
                       tree.num_day_ahead() * tree.num_balancing() *
                           tree.num_energy(),
                       o.out_dir.string());
    return kExitOk;
  });
}

int RunSolve(const SolveOptions& o, std::ostream& out) {
  return Guarded("solve", [&] {
    const io::LoadedConfig loaded = io::LoadConfig(o.config);
    RequireValid(loaded.config, loaded.tree);
    EnsureDirectory(o.out_dir);

    json manifest = BaseManifest("solve", o.config, o.out_dir);
    InheritScenarioProvenance(o.config, manifest);
    manifest["mode"] = ToString(o.mode);
    manifest["limits"] = LimitsJson(o.limits);
    WriteManifest(o.out_dir, manifest);

    spdlog::info("solving {} model", ToString(o.mode));
    const StrategyResult result =
        SolveStrategy(loaded.config, loaded.tree, o.mode, o.limits);
    spdlog::info("status {}, {} nodes, {} LP iterations, {:.3f} s, gap {}",
                 milp::ToString(result.status), result.stats.nodes,
                 result.stats.lp_iterations, result.stats.seconds,
                 result.stats.gap);

    json summary;
    summary["mode"] = ToString(o.mode);
    summary["status"] = milp::ToString(result.status);
    summary["nodes"] = result.stats.nodes;
    summary["binaries"] = result.offer.model.num_binaries();
    summary["objective"] = nullptr;

    if (result.solution) {
      const StrategySolution& sol = *result.solution;
      const VariableIndex& index = result.offer.index;
      const double realized =
          ExpectedRealizedProfit(loaded.config, loaded.tree, index, sol);
      summary["objective"] = std::stod(Money(sol.objective));
      summary["best_bound"] = std::isfinite(result.stats.best_bound)
                                  ? json(std::stod(Money(result.stats.best_bound)))
                                  : json();
      summary["expected_realized_profit"] = std::stod(Money(realized));

      std::string solution_csv = "column_name,value\n";
      for (int c = 0; c < index.num_columns(); ++c) {
        solution_csv += index.Name(c) + "," + Quantity(sol.Value(c)) + "\n";
      }
      io::WriteFile(o.out_dir / "solution.csv", solution_csv);

      const std::vector<double> prob =
          ActiveProbability(EpsFromSolution(index, sol), loaded.tree.da_prob);
      std::string report = std::string(kReportHeader) + "\n";
      for (int k = 0; k < index.horizon(); ++k) {
        report += fmt::format("{},{},{},{},{},{}\n", k + 1,
                              Probability(prob[k]), Money(sol.rho_da[k]),
                              Money(sol.rho_act[k]), Money(sol.rho_pas[k]),
                              Money(sol.cost[k]));
      }
      io::WriteFile(o.out_dir / "report.csv", report);

      std::string curves = std::string(kCurveHeader) + "\n";
      for (const OfferCurve& curve :
           CurvesFromSolution(index, sol, loaded.tree)) {
        for (const CurveStep& step : curve.steps) {
          curves += fmt::format("{},{},{},{}\n", CurveLabel(curve),
                                curve.interval + 1, Money(step.price),
                                Quantity(step.quantity));
        }
      }
      io::WriteFile(o.out_dir / "curves.csv", curves);

      out << fmt::format("status {} objective {}\n",
                         milp::ToString(result.status), Money(sol.objective));
    } else {
      out << fmt::format("status {}\n", milp::ToString(result.status));
    }
    io::WriteFile(o.out_dir / "summary.json", summary.dump(2) + "\n");
    return ExitCodeFor(result.status);
  });
}

int RunExportMps(const ExportOptions& o, std::ostream& out) {
  return Guarded("export-mps", [&] {
    const io::LoadedConfig loaded = io::LoadConfig(o.config);
    const OfferModel offer = EliminateRedundantBinaries(
        BuildModel(loaded.config, loaded.tree, o.mode), loaded.config);
    EnsureDirectory(o.out_dir);
    io::WriteFile(o.out_dir / "model.mps",
                  milp::ExportMps(offer.model, offer.model.name()));

    json manifest = BaseManifest("export-mps", o.config, o.out_dir);
    InheritScenarioProvenance(o.config, manifest);
    manifest["mode"] = ToString(o.mode);
    WriteManifest(o.out_dir, manifest);

    const VariableIndex& index = offer.index;
    out << fmt::format(
        "columns {} rows {} nonzeros {} binaries {} (eps {}, commitment {})\n",
        offer.model.num_columns(), offer.model.num_rows(),
        offer.model.num_nonzeros(), offer.model.num_binaries(),
        index.Count(VarKind::kEps),
        index.has_commitment()
            ? std::to_string(index.Count(VarKind::kCommit))
            : std::string("eliminated"));
    return kExitOk;
  });
}

int RunReport(const ReportOptions& o, std::ostream& out) {
  return Guarded("report", [&] {
    const fs::path out_dir = o.out_dir.empty() ? o.solution_dir : o.out_dir;
    const fs::path report_path = RequireFile(o.solution_dir, "report.csv");
    const fs::path curves_path = RequireFile(o.solution_dir, "curves.csv");

    std::vector<ReportRow> rows;
    for (const auto& cells : CsvRows(report_path, kReportHeader)) {
      const int line = std::stoi(cells.back());
      const std::string source = report_path.string();
      ReportRow row;
      row.k = static_cast<int>(io::ParseNumber(cells[0], source, line));
      row.prob_active = io::ParseNumber(cells[1], source, line);
      row.rho_da = io::ParseNumber(cells[2], source, line);
      row.rho_act = io::ParseNumber(cells[3], source, line);
      row.rho_pas = io::ParseNumber(cells[4], source, line);
      row.cost = io::ParseNumber(cells[5], source, line);
      rows.push_back(row);
    }

    // Panels keyed by label, in order of first appearance.
    std::vector<std::string> labels;
    std::map<std::string, std::vector<CurvePanel>> panels;
    for (const auto& cells : CsvRows(curves_path, kCurveHeader)) {
      const int line = std::stoi(cells.back());
      const std::string source = curves_path.string();
      const std::string& label = cells[0];
      const int k = static_cast<int>(io::ParseNumber(cells[1], source, line));
      const CurveStep step{io::ParseNumber(cells[2], source, line),
                           io::ParseNumber(cells[3], source, line)};
      auto& list = panels[label];
      if (list.empty()) labels.push_back(label);
      if (list.empty() || list.back().k != k) {
        list.push_back({k, {}, label.rfind("DW", 0) == 0});
      }
      list.back().steps.push_back(step);
    }

    EnsureDirectory(out_dir);
    std::vector<ProbabilityPoint> points;
    for (const ReportRow& r : rows) points.push_back({r.k, r.prob_active});
    io::WriteFile(out_dir / "probability.svg", ProbabilityChartSvg(points));
    for (const std::string& label : labels) {
      for (auto& panel : panels[label]) {
        std::stable_sort(panel.steps.begin(), panel.steps.end(),
                         [](const CurveStep& a, const CurveStep& b) {
                           return a.price < b.price;
                         });
      }
      io::WriteFile(out_dir / fmt::format("curves_{}.svg", FileSafe(label)),
                    CurvePlotSvg(label + " offer curves", panels[label]));
    }

    double totals[4] = {0.0, 0.0, 0.0, 0.0};
    std::string table =
        "| k | prob_active | rho_da | rho_act | rho_pas | cost |\n"
        "|---:|---:|---:|---:|---:|---:|\n";
    for (const ReportRow& r : rows) {
      table += fmt::format("| {} | {} | {} | {} | {} | {} |\n", r.k,
                           Probability(r.prob_active), Money(r.rho_da),
                           Money(r.rho_act), Money(r.rho_pas), Money(r.cost));
      totals[0] += r.rho_da;
      totals[1] += r.rho_act;
      totals[2] += r.rho_pas;
      totals[3] += r.cost;
    }
    table += fmt::format("| total | | {} | {} | {} | {} |\n", Money(totals[0]),
                         Money(totals[1]), Money(totals[2]), Money(totals[3]));
    table += fmt::format(
        "\nExpected profit: {}\n",
        Money(totals[0] + totals[1] + totals[2] - totals[3]));
    io::WriteFile(out_dir / "decomposition.md", table);

    out << fmt::format("rendered {} intervals and {} curve groups to {}\n",
                       rows.size(), labels.size(), out_dir.string());
    return kExitOk;
  });
}

}  // namespace vppbid::cli
