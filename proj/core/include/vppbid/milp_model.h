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

#ifndef VPPBID_MILP_MODEL_H_
#define VPPBID_MILP_MODEL_H_

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace vppbid::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Centralized solver tolerances. MilpLimits and LpOptions copy these defaults
// and may override them per call.
inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kIntegralityTolerance = 1e-6;
inline constexpr double kRelativeGapTarget = 1e-9;

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
  bool is_binary = false;
};

struct RowEntry {
  int column = 0;
  double value = 0.0;

  friend bool operator==(const RowEntry&, const RowEntry&) = default;
};

struct Row {
  std::string name;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  // Sorted by column, no duplicates, no explicit zeros.
  std::vector<RowEntry> entries;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sparse mixed-binary linear program. The objective is always maximized.
class MilpModel {
 public:
  MilpModel() = default;
  explicit MilpModel(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  int AddColumn(Column column);
  // Entries are sorted, duplicate columns merged and zero coefficients
  // dropped. Throws ModelError on an out-of-range column id.
  int AddRow(std::string name, RowSense sense, double rhs,
             std::vector<RowEntry> entries);

  int num_columns() const { return static_cast<int>(columns_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_binaries() const;
  int num_nonzeros() const;

  const Column& column(int j) const { return columns_.at(j); }
  Column& mutable_column(int j) { return columns_.at(j); }
  const Row& row(int i) const { return rows_.at(i); }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }

  // Returns one message per broken invariant; empty when the model is sound.
  std::vector<std::string> Validate() const;

  double Objective(const std::vector<double>& values) const;
  double RowActivity(int i, const std::vector<double>& values) const;
  // Largest bound or row violation of `values`.
  double MaxViolation(const std::vector<double>& values) const;

  // Returns a copy without the masked rows and columns. Every entry of a kept
  // row must reference a kept column. `column_map`, when given, receives the
  // new id of each old column (-1 if dropped).
  MilpModel Without(const std::vector<bool>& drop_rows,
                    const std::vector<bool>& drop_columns,
                    std::vector<int>* column_map = nullptr) const;

  friend bool operator==(const MilpModel& a, const MilpModel& b);

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<Row> rows_;
};

bool operator==(const Column& a, const Column& b);
bool operator==(const Row& a, const Row& b);

}  // namespace vppbid::milp

#endif  // VPPBID_MILP_MODEL_H_
