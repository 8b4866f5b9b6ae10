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

#include "vppbid/config_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace vppbid::io {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(std::string_view source, const std::string& message) {
  throw ParseError(fmt::format("{}: {}", source, message));
}

void CheckKeys(const json& object, std::string_view where,
               std::initializer_list<std::string_view> allowed,
               std::string_view source) {
  if (!object.is_object()) Fail(source, fmt::format("{} must be an object", where));
  for (const auto& item : object.items()) {
    bool known = false;
    for (const auto key : allowed) known = known || item.key() == key;
    if (!known) {
      Fail(source, fmt::format("unknown key '{}' in {}", item.key(), where));
    }
  }
}

double Number(const json& object, std::string_view where, const char* key,
              std::string_view source) {
  const auto it = object.find(key);
  if (it == object.end()) {
    Fail(source, fmt::format("missing key '{}' in {}", key, where));
  }
  if (!it->is_number()) {
    Fail(source, fmt::format("'{}.{}' must be a number", where, key));
  }
  return it->get<double>();
}

double NumberOr(const json& object, std::string_view where, const char* key,
                double fallback, std::string_view source) {
  return object.contains(key) ? Number(object, where, key, source) : fallback;
}

std::optional<double> OptionalNumber(const json& object, std::string_view where,
                                     const char* key, std::string_view source) {
  const auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  return Number(object, where, key, source);
}

std::vector<double> Vector(const json& value, std::string_view where,
                           std::string_view source) {
  if (!value.is_array()) Fail(source, fmt::format("{} must be an array", where));
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) {
      Fail(source, fmt::format("{} must contain only numbers", where));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> Matrix(const json& value,
                                        std::string_view where,
                                        std::string_view source) {
  if (!value.is_array()) Fail(source, fmt::format("{} must be an array", where));
  std::vector<std::vector<double>> out;
  for (size_t r = 0; r < value.size(); ++r) {
    out.push_back(Vector(value[r], fmt::format("{}[{}]", where, r), source));
  }
  return out;
}

const json& Required(const json& object, const char* key,
                     std::string_view where, std::string_view source) {
  const auto it = object.find(key);
  if (it == object.end()) {
    Fail(source, fmt::format("missing key '{}' in {}", key, where));
  }
  return *it;
}

ScenarioTree InlineTree(const json& t, std::string_view source) {
  CheckKeys(t, "tree",
            {"da_prices", "da_prob", "ba_prices", "ba_prob", "energy",
             "energy_prob"},
            source);
  ScenarioTree tree;
  tree.da_prices = Matrix(Required(t, "da_prices", "tree", source),
                          "tree.da_prices", source);
  tree.da_prob =
      Vector(Required(t, "da_prob", "tree", source), "tree.da_prob", source);
  const json& ba = Required(t, "ba_prices", "tree", source);
  if (!ba.is_array()) Fail(source, "tree.ba_prices must be an array");
  for (size_t i = 0; i < ba.size(); ++i) {
    tree.ba_prices.push_back(
        Matrix(ba[i], fmt::format("tree.ba_prices[{}]", i), source));
  }
  tree.ba_prob = Matrix(Required(t, "ba_prob", "tree", source),
                        "tree.ba_prob", source);
  tree.energy =
      Matrix(Required(t, "energy", "tree", source), "tree.energy", source);
  tree.energy_prob = Vector(Required(t, "energy_prob", "tree", source),
                            "tree.energy_prob", source);
  return tree;
}

std::string StringField(const json& object, const char* key,
                        std::string_view where, std::string_view source) {
  const json& v = Required(object, key, where, source);
  if (!v.is_string()) {
    Fail(source, fmt::format("'{}.{}' must be a string", where, key));
  }
  return v.get<std::string>();
}

ScenarioTree TreeFromFiles(const json& t, const std::filesystem::path& base,
                           std::string_view source) {
  CheckKeys(t, "tree_files", {"day_ahead", "balancing", "energy"}, source);
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  ScenarioTree tree;
  auto da = LoadTrajectoryCsv(
      resolve(StringField(t, "day_ahead", "tree_files", source)));
  tree.da_prices = std::move(da.trajectories);
  tree.da_prob = std::move(da.weights);
  const json& ba = Required(t, "balancing", "tree_files", source);
  if (!ba.is_array()) Fail(source, "tree_files.balancing must be an array");
  for (const auto& entry : ba) {
    if (!entry.is_string()) {
      Fail(source, "tree_files.balancing must contain file names");
    }
    auto set = LoadTrajectoryCsv(resolve(entry.get<std::string>()));
    tree.ba_prices.push_back(std::move(set.trajectories));
    tree.ba_prob.push_back(std::move(set.weights));
  }
  auto energy =
      LoadTrajectoryCsv(resolve(StringField(t, "energy", "tree_files", source)));
  tree.energy = std::move(energy.trajectories);
  tree.energy_prob = std::move(energy.weights);
  return tree;
}

json ConfigBody(const VppConfig& c) {
  json out;
  const ThermalUnit& t = c.thermal;
  out["thermal"] = {{"capacity", t.capacity},
                    {"min_output", t.min_output},
                    {"ramp_up", t.ramp_up},
                    {"ramp_down", t.ramp_down},
                    {"marginal_cost", t.marginal_cost},
                    {"fixed_cost", t.fixed_cost},
                    {"initial_output", t.initial_output}};
  const StorageUnit& s = c.storage;
  json storage = {{"level_min", s.level_min},
                  {"level_max", s.level_max},
                  {"charge_max", s.charge_max},
                  {"discharge_max", s.discharge_max},
                  {"efficiency", s.efficiency}};
  if (s.initial_level) storage["initial_level"] = *s.initial_level;
  if (s.terminal_level_min) {
    storage["terminal_level_min"] = *s.terminal_level_min;
  }
  out["storage"] = std::move(storage);
  out["renewable"] = {{"capacity", c.renewable.capacity}};
  out["horizon"] = c.horizon;
  return out;
}

std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

bool Blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("cannot read '{}'", path.string()));
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
}

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

LoadedConfig ParseConfig(std::string_view json_text,
                         const std::filesystem::path& base_dir,
                         std::string_view source,
                         TreeRequirement requirement) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    Fail(source, fmt::format("invalid JSON: {}", e.what()));
  }
  CheckKeys(root, "config",
            {"thermal", "storage", "renewable", "horizon", "tree",
             "tree_files"},
            source);
  LoadedConfig out;
  VppConfig& c = out.config;

  const json& t = Required(root, "thermal", "config", source);
  CheckKeys(t, "thermal",
            {"capacity", "min_output", "ramp_up", "ramp_down", "marginal_cost",
             "fixed_cost", "initial_output"},
            source);
  c.thermal.capacity = Number(t, "thermal", "capacity", source);
  c.thermal.min_output = Number(t, "thermal", "min_output", source);
  c.thermal.ramp_up = Number(t, "thermal", "ramp_up", source);
  c.thermal.ramp_down = Number(t, "thermal", "ramp_down", source);
  c.thermal.marginal_cost = Number(t, "thermal", "marginal_cost", source);
  c.thermal.fixed_cost = Number(t, "thermal", "fixed_cost", source);
  c.thermal.initial_output =
      NumberOr(t, "thermal", "initial_output", 0.0, source);

  if (const auto it = root.find("storage"); it != root.end()) {
    const json& s = *it;
    CheckKeys(s, "storage",
              {"level_min", "level_max", "charge_max", "discharge_max",
               "efficiency", "initial_level", "terminal_level_min"},
              source);
    c.storage.level_min = Number(s, "storage", "level_min", source);
    c.storage.level_max = Number(s, "storage", "level_max", source);
    c.storage.charge_max = Number(s, "storage", "charge_max", source);
    c.storage.discharge_max = Number(s, "storage", "discharge_max", source);
    c.storage.efficiency = Number(s, "storage", "efficiency", source);
    c.storage.initial_level =
        OptionalNumber(s, "storage", "initial_level", source);
    c.storage.terminal_level_min =
        OptionalNumber(s, "storage", "terminal_level_min", source);
  }

  const json& r = Required(root, "renewable", "config", source);
  CheckKeys(r, "renewable", {"capacity"}, source);
  c.renewable.capacity = Number(r, "renewable", "capacity", source);

  const json& h = Required(root, "horizon", "config", source);
  if (!h.is_number_integer()) Fail(source, "'horizon' must be an integer");
  c.horizon = h.get<int>();

  const bool inline_tree = root.contains("tree");
  const bool file_tree = root.contains("tree_files");
  if (inline_tree && file_tree) {
    Fail(source, "'tree' and 'tree_files' are mutually exclusive");
  }
  if (!inline_tree && !file_tree) {
    if (requirement == TreeRequirement::kRequired) {
      Fail(source, "one of 'tree' and 'tree_files' is required");
    }
    return out;
  }
  out.tree = inline_tree ? InlineTree(root["tree"], source)
                         : TreeFromFiles(root["tree_files"], base_dir, source);
  return out;
}

LoadedConfig LoadConfig(const std::filesystem::path& path,
                        TreeRequirement tree) {
  return ParseConfig(ReadFile(path), path.parent_path(), path.string(), tree);
}

std::string ConfigToJson(const VppConfig& config, const ScenarioTree& tree) {
  json out = ConfigBody(config);
  out["tree"] = {{"da_prices", tree.da_prices}, {"da_prob", tree.da_prob},
                 {"ba_prices", tree.ba_prices}, {"ba_prob", tree.ba_prob},
                 {"energy", tree.energy},       {"energy_prob", tree.energy_prob}};
  return out.dump(2) + "\n";
}

std::string ConfigToJson(const VppConfig& config, const TreeFiles& files) {
  json out = ConfigBody(config);
  out["tree_files"] = {{"day_ahead", files.day_ahead},
                       {"balancing", files.balancing},
                       {"energy", files.energy}};
  return out.dump(2) + "\n";
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    std::string_view cell = line.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
      cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) {
      cell.remove_suffix(1);
    }
    out.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseNumber(std::string_view text, std::string_view source, int line) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (text.empty() || result.ec != std::errc() || result.ptr != end ||
      !std::isfinite(value)) {
    throw ParseError(
        fmt::format("{}:{}: invalid number '{}'", source, line, text));
  }
  return value;
}

scenario::ProbabilisticForecast ParseForecastCsv(std::string_view text,
                                                 std::string_view source) {
  const auto lines = Lines(text);
  if (lines.empty() || Blank(lines[0])) {
    throw ParseError(fmt::format("{}:1: missing header", source));
  }
  const auto header = SplitCsvLine(lines[0]);
  if (header.size() < 2 || header[0] != "k") {
    throw ParseError(
        fmt::format("{}:1: header must be 'k,q_<level>,...'", source));
  }
  scenario::ProbabilisticForecast forecast;
  for (size_t c = 1; c < header.size(); ++c) {
    if (header[c].rfind("q_", 0) != 0) {
      throw ParseError(fmt::format("{}:1: column '{}' is not 'q_<level>'",
                                   source, header[c]));
    }
    forecast.levels.push_back(
        ParseNumber(std::string_view(header[c]).substr(2), source, 1));
  }
  int expected_k = 1;
  for (size_t n = 1; n < lines.size(); ++n) {
    const int line = static_cast<int>(n) + 1;
    if (Blank(lines[n])) continue;
    const auto cells = SplitCsvLine(lines[n]);
    if (cells.size() != header.size()) {
      throw ParseError(fmt::format("{}:{}: expected {} fields, found {}",
                                   source, line, header.size(), cells.size()));
    }
    const double k = ParseNumber(cells[0], source, line);
    if (k != expected_k) {
      throw ParseError(fmt::format("{}:{}: expected interval {}, found '{}'",
                                   source, line, expected_k, cells[0]));
    }
    ++expected_k;
    std::vector<double> row;
    for (size_t c = 1; c < cells.size(); ++c) {
      row.push_back(ParseNumber(cells[c], source, line));
    }
    forecast.values.push_back(std::move(row));
  }
  try {
    forecast.Validate();
  } catch (const scenario::ScenarioError& e) {
    throw ParseError(fmt::format("{}: {}", source, e.what()));
  }
  return forecast;
}

scenario::ProbabilisticForecast LoadForecastCsv(
    const std::filesystem::path& path) {
  return ParseForecastCsv(ReadFile(path), path.string());
}

std::string ForecastToCsv(const scenario::ProbabilisticForecast& forecast) {
  std::string out = "k";
  for (const double level : forecast.levels) {
    out += ",q_" + FormatNumber(level);
  }
  out += '\n';
  for (size_t k = 0; k < forecast.values.size(); ++k) {
    out += std::to_string(k + 1);
    for (const double v : forecast.values[k]) out += "," + FormatNumber(v);
    out += '\n';
  }
  return out;
}

std::string TrajectoriesToCsv(const scenario::TrajectorySet& set) {
  std::string out = "scenario,weight";
  const size_t horizon =
      set.trajectories.empty() ? 0 : set.trajectories.front().size();
  for (size_t k = 1; k <= horizon; ++k) out += fmt::format(",k{}", k);
  out += '\n';
  for (size_t s = 0; s < set.trajectories.size(); ++s) {
    out += std::to_string(s) + "," + FormatNumber(set.weights.at(s));
    for (const double v : set.trajectories[s]) out += "," + FormatNumber(v);
    out += '\n';
  }
  return out;
}

scenario::TrajectorySet ParseTrajectoryCsv(std::string_view text,
                                           std::string_view source) {
  const auto lines = Lines(text);
  if (lines.empty() || Blank(lines[0])) {
    throw ParseError(fmt::format("{}:1: missing header", source));
  }
  const auto header = SplitCsvLine(lines[0]);
  if (header.size() < 3 || header[0] != "scenario" || header[1] != "weight") {
    throw ParseError(fmt::format(
        "{}:1: header must be 'scenario,weight,k1..kK'", source));
  }
  for (size_t c = 2; c < header.size(); ++c) {
    if (header[c] != fmt::format("k{}", c - 1)) {
      throw ParseError(fmt::format("{}:1: expected column 'k{}', found '{}'",
                                   source, c - 1, header[c]));
    }
  }
  scenario::TrajectorySet set;
  for (size_t n = 1; n < lines.size(); ++n) {
    const int line = static_cast<int>(n) + 1;
    if (Blank(lines[n])) continue;
    const auto cells = SplitCsvLine(lines[n]);
    if (cells.size() != header.size()) {
      throw ParseError(fmt::format("{}:{}: expected {} fields, found {}",
                                   source, line, header.size(), cells.size()));
    }
    const double weight = ParseNumber(cells[1], source, line);
    if (weight < 0.0) {
      throw ParseError(
          fmt::format("{}:{}: negative weight {}", source, line, cells[1]));
    }
    std::vector<double> row;
    for (size_t c = 2; c < cells.size(); ++c) {
      row.push_back(ParseNumber(cells[c], source, line));
    }
    set.weights.push_back(weight);
    set.trajectories.push_back(std::move(row));
  }
  if (set.trajectories.empty()) {
    throw ParseError(fmt::format("{}: no trajectories", source));
  }
  return set;
}

scenario::TrajectorySet LoadTrajectoryCsv(const std::filesystem::path& path) {
  return ParseTrajectoryCsv(ReadFile(path), path.string());
}

}  // namespace vppbid::io
