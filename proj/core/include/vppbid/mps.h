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

// Fixed-format MPS export and import.
//
// Names longer than eight characters (or containing blanks) are mangled to
// 'C'/'R' plus a base-36 index; the original names are kept in "*NAMEMAP"
// comment lines so the importer can restore them. Numbers use the shortest
// decimal form that round-trips exactly, which may exceed the 12-character
// field width of strict fixed format; values are always blank-separated.
// The objective sense is written as an OBJSENSE MAX section; files without
// one are read as minimization and negated.

#ifndef VPPBID_MPS_H_
#define VPPBID_MPS_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "vppbid/milp_model.h"

namespace vppbid::milp {

class MpsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Byte-deterministic for a given model. Throws MpsError when two names
// collide after mangling.
std::string ExportMps(const MilpModel& model, std::string_view name);

// Throws MpsError (with the offending line number) on malformed input,
// non-empty RANGES, or integer columns with bounds outside [0, 1].
MilpModel ImportMps(std::string_view text);

}  // namespace vppbid::milp

#endif  // VPPBID_MPS_H_
