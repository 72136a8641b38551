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

#ifndef RTGDIAG_TESTSYNTH_H_
#define RTGDIAG_TESTSYNTH_H_

#include <cstddef>
#include <string>
#include <vector>

#include "rtgdiag/caps.h"
#include "rtgdiag/rtg.h"
#include "rtgdiag/set_cover.h"

namespace rtgdiag {

// One-dimensional input-to-output path.
struct Path {
  // Node names with internal nodes shortened to their digits: X14Y.
  std::string label;
  std::vector<std::size_t> ribs;    // indices into RtGraph::ribs()
  std::vector<std::string> nodes;   // input .. output

  friend bool operator==(const Path& a, const Path& b) { return a.ribs == b.ribs; }
};

// All simple input-to-output paths, ordered lexicographically by fragment
// sequence. Labels that would collide get a "#k" suffix. Throws
// kInvalidGraph for invalid graphs and kPathExplosion above the cap.
std::vector<Path> EnumeratePaths(const RtGraph& g, const Caps& caps = {});

// One bracket per rib of the path; each bracket lists the rib's statements
// in opcode order, e.g. [(1)(1∨4∨5)(1)].
struct ActivationFormula {
  Path path;
  std::vector<std::vector<StatementId>> brackets;

  std::vector<std::vector<int>> OpcodeSets() const;
  std::string ToString() const;
};

ActivationFormula MakeActivationFormula(const RtGraph& g, const Path& p);

// One statement selected per rib of a path.
struct TestTerm {
  Path path;
  std::vector<StatementId> selection;  // one per rib, in path order
  std::string digits;                  // opcode digits, e.g. "141"
  int occurrence = 1;                  // 1-based among equal digit strings
  std::string label;                   // display form, e.g. "141₁"
};

enum class SuiteOrigin { kComplete, kMinimalCover, kMinimalDiagnostic };

std::string_view SuiteOriginName(SuiteOrigin origin);

struct TestSuite {
  std::vector<TestTerm> terms;
  SuiteOrigin origin = SuiteOrigin::kComplete;

  std::vector<std::string> Labels() const;
};

// Appends a Unicode subscript form of `n` (e.g. 12 -> "₁₂").
std::string Subscript(int n);

// Recomputes occurrence numbers and display labels over a whole suite. A
// term carries a subscript when its digit string occurs more than once, or
// when its path shares its first rib with another path of the suite (the
// terms of such a fan-out group are numbered together: 111₁ 141₁ 151₁ /
// 111₂ 121₁ 151₂).
void AssignTermLabels(std::vector<TestTerm>& terms);

// Bracket removal: the Cartesian product of the formula's brackets, first
// bracket outermost. Occurrences are numbered against `so_far`. Throws
// kTermExplosion when the product exceeds the cap.
std::vector<TestTerm> ExpandTerms(const ActivationFormula& f,
                                  const std::vector<TestTerm>& so_far,
                                  const Caps& caps = {});

// Expansion of every path, in path order.
TestSuite BuildCompleteTest(const RtGraph& g, const std::vector<Path>& paths,
                            const Caps& caps = {});

struct PathCover {
  std::vector<Path> paths;
  bool exact = false;
};

// Minimum set of paths covering every node and rib; ties go to the
// lexicographically smaller path labels.
PathCover MinimalPathCover(const RtGraph& g, const std::vector<Path>& paths,
                           CoverMode mode = CoverMode::kAuto, const Caps& caps = {});

struct DiagnosticTest {
  TestSuite suite;
  bool exact = false;
};

// Minimum set of terms whose selections cover every statement of `g`;
// ties go to the lexicographically smaller term labels. Throws
// kUncoverable naming the first statement no term selects.
DiagnosticTest MinimalDiagnosticTest(const RtGraph& g, const TestSuite& complete,
                                     CoverMode mode = CoverMode::kAuto,
                                     const Caps& caps = {});

// The terms of `complete` whose paths belong to `cover`.
TestSuite RestrictToPaths(const TestSuite& complete, const std::vector<Path>& cover);

}  // namespace rtgdiag

#endif  // RTGDIAG_TESTSYNTH_H_
