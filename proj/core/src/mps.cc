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

#include "vppbid/mps.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

namespace vppbid::milp {
namespace {

constexpr std::string_view kObjectiveRow = "OBJ";
constexpr size_t kNameWidth = 8;

std::string FormatNumber(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::string Base36(int value, int width) {
  static constexpr char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out(width, '0');
  for (int t = width - 1; t >= 0 && value > 0; --t) {
    out[t] = kDigits[value % 36];
    value /= 36;
  }
  return out;
}

bool FitsFixedField(std::string_view name) {
  if (name.empty() || name.size() > kNameWidth) return false;
  for (char c : name) {
    if (c <= ' ' || c > '~') return false;
  }
  return true;
}

class NameTable {
 public:
  std::string Assign(std::string_view original, char prefix, int index,
                     std::string& comments) {
    std::string mangled(original);
    if (!FitsFixedField(original)) {
      mangled = prefix + Base36(index, 7);
      comments += fmt::format("*NAMEMAP {} {} {}\n", prefix, mangled, original);
    }
    if (!used_.insert(mangled).second) {
      throw MpsError(fmt::format("name collision after mangling: '{}' ('{}')",
                                 mangled, original));
    }
    return mangled;
  }

 private:
  std::unordered_set<std::string> used_;
};

// Field layout of fixed MPS: columns 2-3, 5-12, 15-22, 25-36.
std::string Line(std::string_view f1, std::string_view f2, std::string_view f3,
                 std::string_view f4) {
  std::string line = fmt::format(" {:<2} {:<8}  {:<8}  {}", f1, f2, f3, f4);
  while (!line.empty() && line.back() == ' ') line.pop_back();
  line += '\n';
  return line;
}

char SenseCode(RowSense sense) {
  switch (sense) {
    case RowSense::kLessEqual:
      return 'L';
    case RowSense::kEqual:
      return 'E';
    case RowSense::kGreaterEqual:
      return 'G';
  }
  return 'E';
}

}  // namespace

std::string ExportMps(const MilpModel& model, std::string_view name) {
  std::string comments;
  NameTable table;
  table.Assign(kObjectiveRow, 'R', 0, comments);
  std::vector<std::string> row_names;
  std::vector<std::string> column_names;
  for (int i = 0; i < model.num_rows(); ++i) {
    row_names.push_back(table.Assign(model.row(i).name, 'R', i + 1, comments));
  }
  for (int j = 0; j < model.num_columns(); ++j) {
    column_names.push_back(
        table.Assign(model.column(j).name, 'C', j + 1, comments));
  }

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<int, double>>> by_column(
      model.num_columns());
  for (int i = 0; i < model.num_rows(); ++i) {
    for (const RowEntry& e : model.row(i).entries) {
      by_column[e.column].emplace_back(i, e.value);
    }
  }

  std::string out;
  out += fmt::format("NAME          {}\n", name);
  out += comments;
  out += "OBJSENSE\n    MAX\n";
  out += "ROWS\n";
  out += Line("N", kObjectiveRow, "", "");
  for (int i = 0; i < model.num_rows(); ++i) {
    out += Line(std::string(1, SenseCode(model.row(i).sense)), row_names[i],
                "", "");
  }

  out += "COLUMNS\n";
  bool in_integer_block = false;
  int marker = 0;
  for (int j = 0; j < model.num_columns(); ++j) {
    const Column& c = model.column(j);
    if (c.is_binary != in_integer_block) {
      out += fmt::format("    MARKER{:<4}  'MARKER'                 '{}'\n",
                         marker++, c.is_binary ? "INTORG" : "INTEND");
      in_integer_block = c.is_binary;
    }
    if (c.objective != 0.0 || by_column[j].empty()) {
      out += Line("", column_names[j], kObjectiveRow,
                  FormatNumber(c.objective));
    }
    for (const auto& [row, value] : by_column[j]) {
      out += Line("", column_names[j], row_names[row], FormatNumber(value));
    }
  }
  if (in_integer_block) {
    out += fmt::format("    MARKER{:<4}  'MARKER'                 'INTEND'\n",
                       marker++);
  }

  out += "RHS\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    if (model.row(i).rhs != 0.0) {
      out += Line("", "RHS", row_names[i], FormatNumber(model.row(i).rhs));
    }
  }
  out += "RANGES\n";

  out += "BOUNDS\n";
  for (int j = 0; j < model.num_columns(); ++j) {
    const Column& c = model.column(j);
    const std::string& n = column_names[j];
    if (c.is_binary && c.lower == 0.0 && c.upper == 1.0) {
      out += Line("BV", "BND", n, "");
      continue;
    }
    if (c.lower == c.upper) {
      out += Line("FX", "BND", n, FormatNumber(c.lower));
      continue;
    }
    const bool lower_infinite = c.lower == -kInfinity;
    const bool upper_infinite = c.upper == kInfinity;
    if (lower_infinite && upper_infinite) {
      out += Line("FR", "BND", n, "");
      continue;
    }
    if (lower_infinite) {
      out += Line("MI", "BND", n, "");
    } else if (c.lower != 0.0 || c.upper < 0.0) {
      out += Line("LO", "BND", n, FormatNumber(c.lower));
    }
    if (!upper_infinite) out += Line("UP", "BND", n, FormatNumber(c.upper));
  }
  out += "ENDATA\n";
  return out;
}

namespace {

enum class Section { kNone, kName, kObjSense, kRows, kColumns, kRhs, kRanges,
                     kBounds, kEnd };

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t t = 0;
  while (t < line.size()) {
    while (t < line.size() && (line[t] == ' ' || line[t] == '\t')) ++t;
    size_t start = t;
    while (t < line.size() && line[t] != ' ' && line[t] != '\t') ++t;
    if (t > start) tokens.push_back(line.substr(start, t - start));
  }
  return tokens;
}

}  // namespace

MilpModel ImportMps(std::string_view text) {
  MilpModel model;
  int line_number = 0;
  auto fail = [&](std::string_view message) -> MpsError {
    return MpsError(fmt::format("MPS line {}: {}", line_number, message));
  };
  auto parse_number = [&](std::string_view token) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw fail(fmt::format("bad number '{}'", token));
    }
    return value;
  };

  struct PendingRow {
    std::string name;
    RowSense sense;
    double rhs = 0.0;
    std::vector<RowEntry> entries;
  };
  std::vector<PendingRow> rows;
  std::unordered_map<std::string, int> row_index;
  std::unordered_map<std::string, int> column_index;
  std::unordered_map<std::string, std::string> original_name;
  std::string objective_name;
  bool minimize = true;
  bool integer_block = false;
  std::vector<bool> integer_column;
  std::vector<bool> bounded_column;

  Section section = Section::kNone;
  size_t position = 0;
  while (position <= text.size()) {
    size_t end = text.find('\n', position);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(position, end - position);
    position = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line[0] == '*') {
      const auto tokens = Tokenize(line);
      if (tokens.size() >= 4 && tokens[0] == "*NAMEMAP") {
        const size_t at = line.find(tokens[2]) + tokens[2].size() + 1;
        original_name[std::string(tokens[2])] = std::string(line.substr(at));
      }
      continue;
    }
    const auto tokens = Tokenize(line);
    if (tokens.empty()) continue;

    if (line[0] != ' ' && line[0] != '\t') {
      const std::string_view key = tokens[0];
      if (key == "NAME") {
        section = Section::kName;
        if (tokens.size() > 1) model.set_name(std::string(tokens[1]));
      } else if (key == "OBJSENSE") {
        section = Section::kObjSense;
        if (tokens.size() > 1) minimize = tokens[1] == "MIN";
      } else if (key == "ROWS") {
        section = Section::kRows;
      } else if (key == "COLUMNS") {
        section = Section::kColumns;
      } else if (key == "RHS") {
        section = Section::kRhs;
      } else if (key == "RANGES") {
        section = Section::kRanges;
      } else if (key == "BOUNDS") {
        section = Section::kBounds;
      } else if (key == "ENDATA") {
        section = Section::kEnd;
        break;
      } else {
        throw fail(fmt::format("unknown section '{}'", key));
      }
      continue;
    }

    switch (section) {
      case Section::kObjSense:
        minimize = tokens[0] == "MIN" || tokens[0] == "MINIMIZE";
        break;
      case Section::kRows: {
        if (tokens.size() != 2) throw fail("expected '<type> <name>'");
        const std::string_view type = tokens[0];
        const std::string row_name(tokens[1]);
        if (type == "N") {
          if (objective_name.empty()) objective_name = row_name;
          break;
        }
        RowSense sense;
        if (type == "L") {
          sense = RowSense::kLessEqual;
        } else if (type == "G") {
          sense = RowSense::kGreaterEqual;
        } else if (type == "E") {
          sense = RowSense::kEqual;
        } else {
          throw fail(fmt::format("bad row type '{}'", type));
        }
        if (!row_index.emplace(row_name, static_cast<int>(rows.size()))
                 .second) {
          throw fail(fmt::format("duplicate row '{}'", row_name));
        }
        rows.push_back(PendingRow{row_name, sense, 0.0, {}});
        break;
      }
      case Section::kColumns: {
        if (tokens.size() >= 3 && tokens[1] == "'MARKER'") {
          if (tokens[2] == "'INTORG'") {
            integer_block = true;
          } else if (tokens[2] == "'INTEND'") {
            integer_block = false;
          } else {
            throw fail("bad marker");
          }
          break;
        }
        if (tokens.size() != 3 && tokens.size() != 5) {
          throw fail("expected '<column> <row> <value> [<row> <value>]'");
        }
        const std::string column_name(tokens[0]);
        auto [it, inserted] =
            column_index.emplace(column_name, model.num_columns());
        if (inserted) {
          model.AddColumn(Column{column_name, 0.0, kInfinity, 0.0, false});
          integer_column.push_back(integer_block);
          bounded_column.push_back(false);
        }
        const int j = it->second;
        for (size_t t = 1; t + 1 < tokens.size(); t += 2) {
          const std::string target(tokens[t]);
          const double value = parse_number(tokens[t + 1]);
          if (target == objective_name) {
            model.mutable_column(j).objective = value;
          } else {
            auto row = row_index.find(target);
            if (row == row_index.end()) {
              throw fail(fmt::format("unknown row '{}'", target));
            }
            rows[row->second].entries.push_back(RowEntry{j, value});
          }
        }
        break;
      }
      case Section::kRhs: {
        if (tokens.size() != 3 && tokens.size() != 5) {
          throw fail("expected '<set> <row> <value> [<row> <value>]'");
        }
        for (size_t t = 1; t + 1 < tokens.size(); t += 2) {
          const std::string target(tokens[t]);
          if (target == objective_name) {
            throw fail("objective constants are not supported");
          }
          auto row = row_index.find(target);
          if (row == row_index.end()) {
            throw fail(fmt::format("unknown row '{}'", target));
          }
          rows[row->second].rhs = parse_number(tokens[t + 1]);
        }
        break;
      }
      case Section::kRanges:
        throw fail("ranged rows are not supported");
      case Section::kBounds: {
        if (tokens.size() < 3) throw fail("expected '<type> <set> <column>'");
        const std::string_view type = tokens[0];
        auto col = column_index.find(std::string(tokens[2]));
        if (col == column_index.end()) {
          throw fail(fmt::format("unknown column '{}'", tokens[2]));
        }
        Column& c = model.mutable_column(col->second);
        bounded_column[col->second] = true;
        const bool has_value = tokens.size() >= 4;
        const double value = has_value ? parse_number(tokens[3]) : 0.0;
        if ((type == "UP" || type == "LO" || type == "FX") && !has_value) {
          throw fail("bound value missing");
        }
        if (type == "UP") {
          c.upper = value;
        } else if (type == "LO") {
          c.lower = value;
        } else if (type == "FX") {
          c.lower = value;
          c.upper = value;
        } else if (type == "FR") {
          c.lower = -kInfinity;
          c.upper = kInfinity;
        } else if (type == "MI") {
          c.lower = -kInfinity;
        } else if (type == "PL") {
          c.upper = kInfinity;
        } else if (type == "BV") {
          c.lower = 0.0;
          c.upper = 1.0;
          integer_column[col->second] = true;
        } else {
          throw fail(fmt::format("unsupported bound type '{}'", type));
        }
        break;
      }
      default:
        throw fail("data outside of a section");
    }
  }
  if (section != Section::kEnd) throw fail("missing ENDATA");

  for (int j = 0; j < model.num_columns(); ++j) {
    Column& c = model.mutable_column(j);
    if (!integer_column[j]) continue;
    if (!bounded_column[j]) c.upper = 1.0;
    if (c.lower < 0.0 || c.upper > 1.0) {
      throw MpsError(fmt::format(
          "integer column '{}' is not binary; general integers are not "
          "supported",
          c.name));
    }
    c.is_binary = true;
  }
  if (minimize) {
    for (int j = 0; j < model.num_columns(); ++j) {
      model.mutable_column(j).objective = -model.column(j).objective;
    }
  }
  for (PendingRow& r : rows) {
    r.name = original_name.contains(r.name) ? original_name[r.name] : r.name;
    model.AddRow(std::move(r.name), r.sense, r.rhs, std::move(r.entries));
  }
  for (int j = 0; j < model.num_columns(); ++j) {
    Column& c = model.mutable_column(j);
    if (auto it = original_name.find(c.name); it != original_name.end()) {
      c.name = it->second;
    }
  }
  return model;
}

}  // namespace vppbid::milp
