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

#include "vppbid/milp_model.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace vppbid::milp {

int MilpModel::AddColumn(Column column) {
  columns_.push_back(std::move(column));
  return num_columns() - 1;
}

int MilpModel::AddRow(std::string name, RowSense sense, double rhs,
                      std::vector<RowEntry> entries) {
  for (const RowEntry& e : entries) {
    if (e.column < 0 || e.column >= num_columns()) {
      throw ModelError(
          fmt::format("row '{}' references unknown column {}", name, e.column));
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const RowEntry& a, const RowEntry& b) {
              return a.column < b.column;
            });
  std::vector<RowEntry> merged;
  merged.reserve(entries.size());
  for (const RowEntry& e : entries) {
    if (!merged.empty() && merged.back().column == e.column) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const RowEntry& e) { return e.value == 0.0; });
  rows_.push_back(Row{std::move(name), sense, rhs, std::move(merged)});
  return num_rows() - 1;
}

int MilpModel::num_binaries() const {
  return static_cast<int>(std::count_if(
      columns_.begin(), columns_.end(),
      [](const Column& c) { return c.is_binary; }));
}

int MilpModel::num_nonzeros() const {
  int total = 0;
  for (const Row& r : rows_) total += static_cast<int>(r.entries.size());
  return total;
}

std::vector<std::string> MilpModel::Validate() const {
  std::vector<std::string> problems;
  for (int j = 0; j < num_columns(); ++j) {
    const Column& c = columns_[j];
    if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower > c.upper) {
      problems.push_back(fmt::format("column '{}' has lower {} > upper {}",
                                     c.name, c.lower, c.upper));
    }
    if (c.is_binary && (c.lower < 0.0 || c.upper > 1.0)) {
      problems.push_back(
          fmt::format("binary column '{}' has bounds outside [0, 1]", c.name));
    }
    if (!std::isfinite(c.objective)) {
      problems.push_back(
          fmt::format("column '{}' has a non-finite objective", c.name));
    }
  }
  for (const Row& r : rows_) {
    if (!std::isfinite(r.rhs)) {
      problems.push_back(fmt::format("row '{}' has a non-finite rhs", r.name));
    }
    for (size_t t = 0; t < r.entries.size(); ++t) {
      if (t > 0 && r.entries[t].column <= r.entries[t - 1].column) {
        problems.push_back(
            fmt::format("row '{}' has duplicate or unsorted entries", r.name));
        break;
      }
      if (!std::isfinite(r.entries[t].value)) {
        problems.push_back(
            fmt::format("row '{}' has a non-finite coefficient", r.name));
        break;
      }
    }
  }
  return problems;
}

double MilpModel::Objective(const std::vector<double>& values) const {
  double total = 0.0;
  for (int j = 0; j < num_columns(); ++j) {
    total += columns_[j].objective * values[j];
  }
  return total;
}

double MilpModel::RowActivity(int i, const std::vector<double>& values) const {
  double activity = 0.0;
  for (const RowEntry& e : rows_[i].entries) {
    activity += e.value * values[e.column];
  }
  return activity;
}

double MilpModel::MaxViolation(const std::vector<double>& values) const {
  double worst = 0.0;
  for (int j = 0; j < num_columns(); ++j) {
    worst = std::max(worst, columns_[j].lower - values[j]);
    worst = std::max(worst, values[j] - columns_[j].upper);
  }
  for (int i = 0; i < num_rows(); ++i) {
    const double activity = RowActivity(i, values);
    const Row& r = rows_[i];
    if (r.sense != RowSense::kGreaterEqual) {
      worst = std::max(worst, activity - r.rhs);
    }
    if (r.sense != RowSense::kLessEqual) {
      worst = std::max(worst, r.rhs - activity);
    }
  }
  return worst;
}

MilpModel MilpModel::Without(const std::vector<bool>& drop_rows,
                             const std::vector<bool>& drop_columns,
                             std::vector<int>* column_map) const {
  std::vector<int> remap(num_columns(), -1);
  MilpModel out(name_);
  for (int j = 0; j < num_columns(); ++j) {
    if (!drop_columns[j]) remap[j] = out.AddColumn(columns_[j]);
  }
  for (int i = 0; i < num_rows(); ++i) {
    if (drop_rows[i]) continue;
    Row r = rows_[i];
    for (RowEntry& e : r.entries) {
      if (remap[e.column] < 0) {
        throw ModelError(fmt::format(
            "kept row '{}' references dropped column '{}'", r.name,
            columns_[e.column].name));
      }
      e.column = remap[e.column];
    }
    out.rows_.push_back(std::move(r));
  }
  if (column_map != nullptr) *column_map = std::move(remap);
  return out;
}

bool operator==(const Column& a, const Column& b) {
  return a.name == b.name && a.lower == b.lower && a.upper == b.upper &&
         a.objective == b.objective && a.is_binary == b.is_binary;
}

bool operator==(const Row& a, const Row& b) {
  return a.name == b.name && a.sense == b.sense && a.rhs == b.rhs &&
         a.entries == b.entries;
}

bool operator==(const MilpModel& a, const MilpModel& b) {
  return a.columns_ == b.columns_ && a.rows_ == b.rows_;
}

}  // namespace vppbid::milp
