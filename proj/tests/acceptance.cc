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

// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails unexpectedly.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rtgdiag/diagnosis.h"
#include "rtgdiag/fdt.h"
#include "rtgdiag/frontend.h"
#include "rtgdiag/simulator.h"
#include "rtgdiag/testability.h"
#include "rtgdiag/testsynth.h"
#include "test_support.h"

namespace rtgdiag {
namespace {

using testing::Fig1;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::set<std::set<std::string>> TermLabels(const CandidateDnf& f) {
  std::set<std::set<std::string>> out;
  for (const Conjunction& c : f.terms) {
    std::set<std::string> t;
    for (const StatementId& id : c) t.insert(id.Label());
    out.insert(t);
  }
  return out;
}

std::set<std::string> LabelSet(const std::set<StatementId>& ids) {
  std::set<std::string> out;
  for (const StatementId& id : ids) out.insert(id.Label());
  return out;
}

FaultDetectionTable Fig1Extended() {
  RtGraph g = Fig1();
  return BuildExtendedFdt(g, BuildCompleteTest(g, EnumeratePaths(g)));
}

Outcome Criterion1() {
  std::vector<std::string> labels;
  for (const Path& p : EnumeratePaths(Fig1())) labels.push_back(p.label);
  return {labels == std::vector<std::string>{"X14Y", "X15Y", "X2Y", "X3Y"}, Join(labels)};
}

Outcome Criterion2() {
  // Rows of the extended table as printed, marks over the 12 columns.
  const std::vector<std::pair<std::string, std::string>> paper = {
      {"111₁", "100001000001"}, {"141₁", "100000100001"}, {"151₁", "100000010001"},
      {"111₂", "100000001001"}, {"121₁", "100000000101"}, {"151₂", "100000000011"},
      {"21₁", "010000000001"},  {"31", "001000000001"},   {"11", "000100000001"},
      {"21₂", "000010000001"}};
  FaultDetectionTable t = Fig1Extended();
  std::vector<std::string> columns;
  for (const StatementId& c : t.columns) columns.push_back(c.Label());
  bool ok = Join(columns) == "I11 I22 I23 I31 I32 I41 I44 I45 I51 I52 I55 I61" &&
            t.rows.size() == paper.size();
  std::vector<std::string> labels;
  for (std::size_t r = 0; ok && r < t.rows.size(); ++r) {
    std::string cells;
    for (const StatementId& c : t.columns) cells += t.rows[r].marks.count(c) ? '1' : '0';
    ok = t.rows[r].label == paper[r].first && cells == paper[r].second;
    labels.push_back(t.rows[r].label);
  }
  return {ok, std::to_string(t.rows.size()) + " terms: " + Join(labels)};
}

Outcome Criterion3() {
  RtGraph g = Fig1();
  TestSuite s = BuildCompleteTest(g, EnumeratePaths(g));
  RtGraph m = InjectFault(g, FaultSpec::Parse("I5:3:op=3"));
  const ResponseVector expected = ResponseVector::Parse("0001110000");
  ResponseVector v = RunSuite(g, m, s, PlanStimuli(g, s).stimuli);
  bool ok = v == expected;
  // Other stimulus sets: the fault shifts w by 4 on X15Y, so none masks it.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-10, 10);
  int sets = 0;
  for (int i = 0; i < 25; ++i, ++sets) {
    std::map<std::string, Stimulus> stimuli;
    for (const TestTerm& t : s.terms) {
      stimuli[t.label] = {t.label, {{"x", dist(rng)}, {"w", dist(rng)}}};
    }
    ok = ok && RunSuite(g, m, s, stimuli) == expected;
  }
  return {ok, "V = " + v.ToString() + ", same over " + std::to_string(sets) + " random stimulus sets"};
}

Outcome Criterion4() {
  FaultDetectionTable t = AttachResponse(Fig1Extended(), ResponseVector::Parse("0001110000"));
  DiagnosisResult r = Diagnose(t, ExonerationMode::kStrong);
  bool ok = TermLabels(r.candidates) ==
                std::set<std::set<std::string>>{{"I11"}, {"I61"}, {"I51", "I52", "I55"}} &&
            TermLabels(r.reduced) == std::set<std::set<std::string>>{{"I51", "I52", "I55"}};
  return {ok, "F = " + r.candidates.ToString() + "; F' = " + r.reduced.ToString()};
}

Outcome Criterion5() {
  RtGraph g = Fig1();
  FaultDetectionTable t = AttachResponse(BuildGeneralizedFdt(g, EnumeratePaths(g)),
                                         ResponseVector::Parse("0100"));
  std::set<std::string> got = LabelSet(DiagnoseGeneralized(t));
  return {got == std::set<std::string>{"I51", "I52", "I55"},
          "suspects = " + JoinLabels(DiagnoseGeneralized(t), " ")};
}

Outcome Criterion6() {
  std::mt19937 rng(20240601);
  int agree = 0;
  const int total = 500;
  for (int i = 0; i < total; ++i) {
    std::vector<Clause> clauses = testing::RandomClauses(rng);
    CandidateDnf f = CnfToMinDnf(clauses);
    std::set<std::set<StatementId>> got(f.terms.begin(), f.terms.end());
    agree += got.size() == f.terms.size() && got == testing::BruteForceMinimalHittingSets(clauses);
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " families agree"};
}

Outcome Criterion7() {
  std::mt19937 rng(1234);
  int eligible = 0, passed = 0;
  std::string first_failure;
  for (int i = 0; i < 200; ++i) {
    testing::Trial t = testing::SoundnessTrial(rng);
    if (!t.eligible) continue;
    ++eligible;
    if (t.passed) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = t.detail;
    }
  }
  std::string detail = std::to_string(passed) + "/" + std::to_string(eligible) +
                       " non-masked models sound (200 generated)";
  if (!first_failure.empty()) detail += "; first failure: " + first_failure;
  return {eligible > 0 && passed == eligible, detail};
}

Outcome Criterion8() {
  RtGraph g = Fig1();
  auto paths = EnumeratePaths(g);
  TestSuite complete = BuildCompleteTest(g, paths);
  std::size_t pu = 0, tu = 0;
  auto psets = testing::PathCoverSets(g, paths, &pu);
  auto tsets = testing::TermCoverSets(g, complete.terms, &tu);
  PathCover pc = MinimalPathCover(g, paths);
  DiagnosticTest dt = MinimalDiagnosticTest(g, complete);
  bool ok = pc.paths.size() == 4 && testing::BruteForceMinCover(psets, pu) == 4 &&
            dt.suite.terms.size() == 10 && testing::BruteForceMinCover(tsets, tu) == 10;
  std::mt19937 rng(4321);
  int good = 0;
  for (int i = 0; i < 100; ++i) good += testing::CoverTrial(rng).passed;
  ok = ok && good == 100;
  return {ok, "fixture cover " + std::to_string(pc.paths.size()) + " paths, diagnostic test " +
                  std::to_string(dt.suite.terms.size()) + " terms; random models " +
                  std::to_string(good) + "/100"};
}

Outcome Criterion9() {
  BuildResult b = BuildRtg(ParseProgram(testing::Listing31(), {.fold_constants = false}));
  const std::vector<std::multiset<int>> expected = {{1}, {2, 3}, {2, 1}, {1, 4, 5}, {1, 2, 5}, {1}};
  bool brackets = b.graph.Fragments().size() == expected.size();
  for (std::size_t i = 0; brackets && i < expected.size(); ++i) {
    std::multiset<int> ops;
    for (const Statement& s : *b.graph.FragmentStatements("I" + std::to_string(i + 1))) {
      ops.insert(s.opcode);
    }
    brackets = ops == expected[i];
  }
  const double value =
      ExecuteProgram(ParseProgram(testing::Listing31()), Stimulus{"", {{"x", 1.0}}}).output;
  const double hand = 4.0 + std::sin(1.0 + 3.14159 / 3.0);  // f = 4, w = sin(1 + PI/3)
  const double stated = 4.88788;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "opcode multisets %s; F(1) = %.6f, hand evaluation %.6f (diff %.1e), "
                "stated 4.88788 +- 1e-4 (diff %.1e)",
                brackets ? "match" : "differ", value, hand, std::abs(value - hand),
                std::abs(value - stated));
  return {brackets && std::abs(value - stated) <= 1e-4, buf};
}

Outcome Criterion10() {
  RtGraph g = Fig1();
  auto paths = EnumeratePaths(g);
  std::vector<std::string> groups;
  for (const AmbiguityGroup& a : AmbiguityGroups(g, paths)) groups.push_back(a.ToString());
  bool ok = Join(groups) == "{I11} {I22,I23} {I31,I32} {I41,I44,I45} {I51,I52,I55} {I61}";
  auto minimum = MinimumObservationPoints(g, paths, 1, std::string("I5"));
  PlacementOptions options;
  options.focus_fragment = "I5";
  Placement greedy = RecommendObservationPoints(g, paths, options);
  ok = ok && minimum && minimum->size() == 2 && greedy.points.size() == 2;
  std::vector<std::string> pts;
  for (const ObservationPoint& p : greedy.points) pts.push_back(p.ToString());
  return {ok, Join(groups) + "; I5 needs " + (minimum ? std::to_string(minimum->size()) : "?") +
                  " points (" + Join(pts) + ")"};
}

// Criteria whose failure is understood and recorded; they still print FAIL.
const std::set<int> kKnownDeviations = {9};

}  // namespace
}  // namespace rtgdiag

int main() {
  using namespace rtgdiag;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"path enumeration on the fixture", Criterion1},
      {"complete test labels and extended table", Criterion2},
      {"response vector of the injected fault", Criterion3},
      {"candidate DNF and strong reduction", Criterion4},
      {"generalized diagnosis", Criterion5},
      {"min-DNF vs brute-force hitting sets", Criterion6},
      {"single-fault soundness", Criterion7},
      {"covering optimality", Criterion8},
      {"frontend fidelity", Criterion9},
      {"testability", Criterion10},
  };
  int unexpected = 0, passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    passed += o.pass;
    if (!o.pass && !kKnownDeviations.count(n)) ++unexpected;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << n << " " << criteria[i].first << ": "
              << o.detail << (o.pass || !kKnownDeviations.count(n) ? "" : " [known deviation]")
              << "\n";
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass\n";
  return unexpected == 0 ? 0 : 1;
}
