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

#ifndef RTGDIAG_DIAGNOSIS_H_
#define RTGDIAG_DIAGNOSIS_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rtgdiag/caps.h"
#include "rtgdiag/fdt.h"
#include "rtgdiag/rtg.h"

namespace rtgdiag {

// Disjunction of suspect statements: the marks of one failing row.
using Clause = std::set<StatementId>;
// Conjunction of statements: one term of a candidate DNF.
using Conjunction = std::set<StatementId>;

// Antichain of conjunctions under set inclusion, in canonical order
// (size, then lexicographic).
struct CandidateDnf {
  std::vector<Conjunction> terms;

  // "I11 ∨ I61 ∨ I51 I52 I55"
  std::string ToString() const;
  std::set<StatementId> Statements() const;

  friend bool operator==(const CandidateDnf&, const CandidateDnf&) = default;
};

// Sorts and deduplicates, then drops every term that contains another.
CandidateDnf Canonicalize(std::vector<Conjunction> terms);

enum class ExonerationMode {
  kStrong,  // drop every term that contains an exonerated statement
  kWeak,    // drop only terms made entirely of exonerated statements
};

std::string_view ExonerationModeName(ExonerationMode mode);
ExonerationMode ParseExonerationMode(std::string_view text);

// Statements whose detection signatures coincide.
struct AmbiguityGroup {
  std::set<StatementId> members;

  std::string ToString() const;  // "{I51,I52,I55}"
  friend bool operator==(const AmbiguityGroup&, const AmbiguityGroup&) = default;
};

struct DiagnosisResult {
  std::vector<Clause> clauses;
  CandidateDnf candidates;            // F
  std::set<StatementId> exonerated;   // H
  CandidateDnf reduced;               // F'
  ExonerationMode mode = ExonerationMode::kStrong;
  std::vector<AmbiguityGroup> groups;  // groups meeting F'
};

// One clause per row with bit 1. Throws kNoFailures when V is all zero.
std::vector<Clause> BuildCnf(const FaultDetectionTable& t);

// Minimal hitting sets of the clause family, built one clause at a time
// with idempotence and absorption applied after every step. Throws
// kCandidateExplosion above the cap.
CandidateDnf CnfToMinDnf(const std::vector<Clause>& clauses, const Caps& caps = {});

// Union of the marks of rows with bit 0.
std::set<StatementId> ExonerationSet(const FaultDetectionTable& t);

// Throws kEmptyDiagnosis when every term is dropped.
CandidateDnf ReduceCandidates(const CandidateDnf& f, const std::set<StatementId>& exonerated,
                              ExonerationMode mode);

// BuildCnf -> CnfToMinDnf -> ExonerationSet -> ReduceCandidates.
DiagnosisResult Diagnose(const FaultDetectionTable& t,
                         ExonerationMode mode = ExonerationMode::kStrong,
                         const Caps& caps = {});

// Generalized-table diagnosis: statements marked by every failing row and
// by no passing row. Throws kNoFailures.
std::set<StatementId> DiagnoseGeneralized(const FaultDetectionTable& t);

// Groups columns of a table by the set of paths of the rows marking them.
std::vector<AmbiguityGroup> TableAmbiguityGroups(const FaultDetectionTable& t);

std::string JoinLabels(const std::set<StatementId>& ids, std::string_view sep);

}  // namespace rtgdiag

#endif  // RTGDIAG_DIAGNOSIS_H_
