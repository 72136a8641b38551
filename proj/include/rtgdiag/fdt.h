// Copyright 2026 The rtgdiag Authors
//
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

#ifndef RTGDIAG_FDT_H_
#define RTGDIAG_FDT_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rtgdiag/rtg.h"
#include "rtgdiag/testsynth.h"

namespace rtgdiag {

// Pass/fail bit per table row; 1 means the observed output differed.
struct ResponseVector {
  std::vector<int> bits;

  // Accepts "0100", "0,1,0,0" or "(0,1,0,0)". Throws kFormat.
  static ResponseVector Parse(std::string_view text);
  std::string ToString() const;  // "(0,1,0,0)"
  bool AllZero() const;

  friend bool operator==(const ResponseVector&, const ResponseVector&) = default;
};

enum class TableKind { kGeneralized, kExtended };

std::string_view TableKindName(TableKind kind);

struct FdtRow {
  std::string label;
  std::string path;               // label of the path the row exercises
  std::set<StatementId> marks;

  friend bool operator==(const FdtRow&, const FdtRow&) = default;
};

struct FaultDetectionTable {
  TableKind kind = TableKind::kExtended;
  std::vector<StatementId> columns;
  std::vector<FdtRow> rows;
  std::optional<ResponseVector> response;

  friend bool operator==(const FaultDetectionTable&, const FaultDetectionTable&) = default;
};

// One row per path marking every statement on the path.
FaultDetectionTable BuildGeneralizedFdt(const RtGraph& g, const std::vector<Path>& paths);

// One row per term marking exactly its selected statements.
FaultDetectionTable BuildExtendedFdt(const RtGraph& g, const TestSuite& suite);

// Copy of `t` with `v` bound. Throws kLengthMismatch.
FaultDetectionTable AttachResponse(const FaultDetectionTable& t, const ResponseVector& v);

// {"kind", "columns":[{id, fragment, opcode, ordinal}],
//  "rows":[{label, path, marks:[id...], v}]}; "v" only when bound.
nlohmann::json TableToJson(const FaultDetectionTable& t);
FaultDetectionTable TableFromJson(const nlohmann::json& j);

// Fixed-width text with the layout of the reference tables. When `faults`
// is given a trailing "Faults" row marks those statements.
std::string RenderTable(const FaultDetectionTable& t,
                        const std::set<StatementId>* faults = nullptr);

// Display width of UTF-8 text in code points.
std::size_t DisplayWidth(std::string_view text);

}  // namespace rtgdiag

#endif  // RTGDIAG_FDT_H_
