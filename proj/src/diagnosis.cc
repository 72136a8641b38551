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

#include "rtgdiag/diagnosis.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>

#include "rtgdiag/error.h"

namespace rtgdiag {

namespace {

bool Intersects(const std::set<StatementId>& a, const std::set<StatementId>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  return std::any_of(small.begin(), small.end(),
                     [&](const StatementId& id) { return large.count(id) > 0; });
}

bool IsSubset(const std::set<StatementId>& a, const std::set<StatementId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void RequireResponse(const FaultDetectionTable& t) {
  if (!t.response) throw Error(ErrorCode::kFormat, "the table has no response vector");
}

}  // namespace

std::string JoinLabels(const std::set<StatementId>& ids, std::string_view sep) {
  std::string out;
  for (const StatementId& id : ids) {
    if (!out.empty()) out += sep;
    out += id.Label();
  }
  return out;
}

std::string CandidateDnf::ToString() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const Conjunction& c : terms) {
    if (!out.empty()) out += " ∨ ";
    out += JoinLabels(c, " ");
  }
  return out;
}

std::set<StatementId> CandidateDnf::Statements() const {
  std::set<StatementId> out;
  for (const Conjunction& c : terms) out.insert(c.begin(), c.end());
  return out;
}

CandidateDnf Canonicalize(std::vector<Conjunction> terms) {
  std::sort(terms.begin(), terms.end(), [](const Conjunction& a, const Conjunction& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  CandidateDnf out;
  // Sorted by size, so any absorbing term precedes the terms it absorbs.
  for (Conjunction& t : terms) {
    bool absorbed = std::any_of(out.terms.begin(), out.terms.end(),
                                [&](const Conjunction& kept) { return IsSubset(kept, t); });
    if (!absorbed) out.terms.push_back(std::move(t));
  }
  return out;
}

std::string_view ExonerationModeName(ExonerationMode mode) {
  return mode == ExonerationMode::kStrong ? "strong" : "weak";
}

ExonerationMode ParseExonerationMode(std::string_view text) {
  if (text == "strong") return ExonerationMode::kStrong;
  if (text == "weak") return ExonerationMode::kWeak;
  throw Error(ErrorCode::kFormat, "exoneration mode must be strong or weak");
}

std::string AmbiguityGroup::ToString() const { return "{" + JoinLabels(members, ",") + "}"; }

std::vector<Clause> BuildCnf(const FaultDetectionTable& t) {
  RequireResponse(t);
  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.response->bits[i] != 1) continue;
    if (t.rows[i].marks.empty()) {
      throw Error(ErrorCode::kFormat, "failing row " + t.rows[i].label + " marks no statement");
    }
    clauses.push_back(t.rows[i].marks);
  }
  if (clauses.empty()) throw Error(ErrorCode::kNoFailures, "no fault detected");
  return clauses;
}

CandidateDnf CnfToMinDnf(const std::vector<Clause>& clauses, const Caps& caps) {
  if (clauses.empty()) throw Error(ErrorCode::kFormat, "empty clause family");
  CandidateDnf current{{Conjunction{}}};
  for (const Clause& clause : clauses) {
    if (clause.empty()) throw Error(ErrorCode::kFormat, "empty clause");
    std::vector<Conjunction> next;
    for (const Conjunction& term : current.terms) {
      if (Intersects(term, clause)) {
        next.push_back(term);  // (A ∨ B) ∧ A = A
        continue;
      }
      for (const StatementId& literal : clause) {
        Conjunction extended = term;
        extended.insert(literal);
        next.push_back(std::move(extended));
      }
    }
    current = Canonicalize(std::move(next));
    if (current.terms.size() > caps.max_candidates) {
      throw Error(ErrorCode::kCandidateExplosion,
                  "more than " + std::to_string(caps.max_candidates) + " candidate terms");
    }
  }
  return current;
}

std::set<StatementId> ExonerationSet(const FaultDetectionTable& t) {
  RequireResponse(t);
  std::set<StatementId> h;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.response->bits[i] == 0) h.insert(t.rows[i].marks.begin(), t.rows[i].marks.end());
  }
  return h;
}

CandidateDnf ReduceCandidates(const CandidateDnf& f, const std::set<StatementId>& exonerated,
                              ExonerationMode mode) {
  CandidateDnf out;
  for (const Conjunction& term : f.terms) {
    bool drop = mode == ExonerationMode::kStrong ? Intersects(term, exonerated)
                                                 : IsSubset(term, exonerated);
    if (!drop) out.terms.push_back(term);
  }
  if (out.terms.empty()) {
    throw Error(ErrorCode::kEmptyDiagnosis,
                "every candidate is exonerated by a passing test; the observations are "
                "inconsistent with a single fault");
  }
  return out;
}

DiagnosisResult Diagnose(const FaultDetectionTable& t, ExonerationMode mode, const Caps& caps) {
  DiagnosisResult r;
  r.mode = mode;
  r.clauses = BuildCnf(t);
  r.candidates = CnfToMinDnf(r.clauses, caps);
  r.exonerated = ExonerationSet(t);
  r.reduced = ReduceCandidates(r.candidates, r.exonerated, mode);
  std::set<StatementId> suspects = r.reduced.Statements();
  for (AmbiguityGroup& g : TableAmbiguityGroups(t)) {
    if (Intersects(g.members, suspects)) r.groups.push_back(std::move(g));
  }
  return r;
}

std::set<StatementId> DiagnoseGeneralized(const FaultDetectionTable& t) {
  RequireResponse(t);
  if (t.kind != TableKind::kGeneralized) {
    throw Error(ErrorCode::kFormat, "generalized diagnosis needs a generalized table");
  }
  std::optional<std::set<StatementId>> common;
  std::set<StatementId> passing;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& marks = t.rows[i].marks;
    if (t.response->bits[i] == 0) {
      passing.insert(marks.begin(), marks.end());
      continue;
    }
    if (!common) {
      common = marks;
      continue;
    }
    std::set<StatementId> both;
    std::set_intersection(common->begin(), common->end(), marks.begin(), marks.end(),
                          std::inserter(both, both.end()));
    common = std::move(both);
  }
  if (!common) throw Error(ErrorCode::kNoFailures, "no fault detected");
  std::set<StatementId> out;
  std::set_difference(common->begin(), common->end(), passing.begin(), passing.end(),
                      std::inserter(out, out.end()));
  return out;
}

std::vector<AmbiguityGroup> TableAmbiguityGroups(const FaultDetectionTable& t) {
  std::map<std::set<std::string>, AmbiguityGroup> by_signature;
  std::vector<std::set<std::string>> order;
  for (const StatementId& id : t.columns) {
    std::set<std::string> signature;
    for (const FdtRow& row : t.rows) {
      if (row.marks.count(id)) signature.insert(row.path);
    }
    auto [it, inserted] = by_signature.try_emplace(signature);
    if (inserted) order.push_back(signature);
    it->second.members.insert(id);
  }
  std::vector<AmbiguityGroup> out;
  for (const auto& sig : order) out.push_back(by_signature[sig]);
  return out;
}

}  // namespace rtgdiag
