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

#include "rtgdiag/testsynth.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "rtgdiag/error.h"

namespace rtgdiag {

namespace {

std::string ShortNodeName(const Node& n) {
  if (n.role != NodeRole::kInternal) return n.name;
  std::size_t digits = n.name.size();
  while (digits > 0 && std::isdigit(static_cast<unsigned char>(n.name[digits - 1]))) --digits;
  if (digits == n.name.size() || digits == 0) return n.name;
  for (std::size_t i = 0; i < digits; ++i) {
    if (!std::isalpha(static_cast<unsigned char>(n.name[i]))) return n.name;
  }
  return n.name.substr(digits);
}

std::string OpcodeText(const StatementId& id) {
  std::string s = std::to_string(id.opcode);
  if (id.show_ordinal) s += "." + std::to_string(id.ordinal);
  return s;
}

// Solver preference order: indices sorted by label.
template <typename Item, typename LabelOf>
std::vector<std::size_t> OrderByLabel(const std::vector<Item>& items, LabelOf label_of) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return label_of(items[a]) < label_of(items[b]);
  });
  return order;
}

}  // namespace

std::vector<Path> EnumeratePaths(const RtGraph& g, const Caps& caps) {
  RequireValid(g);
  std::map<std::string, std::vector<std::size_t>> out_ribs;
  for (std::size_t i = 0; i < g.ribs().size(); ++i) out_ribs[g.ribs()[i].src].push_back(i);
  for (auto& [node, ribs] : out_ribs) {
    std::stable_sort(ribs.begin(), ribs.end(), [&](std::size_t a, std::size_t b) {
      const Rib& ra = g.ribs()[a];
      const Rib& rb = g.ribs()[b];
      if (int c = NaturalCompare(ra.fragment, rb.fragment); c != 0) return c < 0;
      return NaturalCompare(ra.dst, rb.dst) < 0;
    });
  }
  const std::string input = *g.InputNode();
  const std::string output = *g.OutputNode();

  std::vector<Path> paths;
  std::vector<std::size_t> stack;
  auto dfs = [&](auto&& self, const std::string& node) -> void {
    if (node == output) {
      if (paths.size() >= caps.max_paths) {
        throw Error(ErrorCode::kPathExplosion,
                    "more than " + std::to_string(caps.max_paths) + " paths");
      }
      Path p;
      p.ribs = stack;
      p.nodes.push_back(input);
      for (std::size_t r : stack) p.nodes.push_back(g.ribs()[r].dst);
      for (const std::string& n : p.nodes) p.label += ShortNodeName(*g.FindNode(n));
      paths.push_back(std::move(p));
      return;
    }
    auto it = out_ribs.find(node);
    if (it == out_ribs.end()) return;
    for (std::size_t r : it->second) {
      stack.push_back(r);
      self(self, g.ribs()[r].dst);
      stack.pop_back();
    }
  };
  dfs(dfs, input);

  std::map<std::string, int> count, seen;
  for (const Path& p : paths) ++count[p.label];
  for (Path& p : paths) {
    if (count[p.label] > 1) p.label += "#" + std::to_string(++seen[p.label]);
  }
  return paths;
}

std::vector<std::vector<int>> ActivationFormula::OpcodeSets() const {
  std::vector<std::vector<int>> out;
  for (const auto& bracket : brackets) {
    std::vector<int> ops;
    for (const StatementId& id : bracket) ops.push_back(id.opcode);
    out.push_back(std::move(ops));
  }
  return out;
}

std::string ActivationFormula::ToString() const {
  std::string out = "[";
  for (const auto& bracket : brackets) {
    out += "(";
    for (std::size_t i = 0; i < bracket.size(); ++i) {
      if (i) out += "∨";
      out += OpcodeText(bracket[i]);
    }
    out += ")";
  }
  return out + "]";
}

ActivationFormula MakeActivationFormula(const RtGraph& g, const Path& p) {
  ActivationFormula f;
  f.path = p;
  for (std::size_t r : p.ribs) {
    std::vector<StatementId> ids = g.RibStatementIds(r);
    std::sort(ids.begin(), ids.end());
    f.brackets.push_back(std::move(ids));
  }
  return f;
}

std::string_view SuiteOriginName(SuiteOrigin origin) {
  switch (origin) {
    case SuiteOrigin::kComplete: return "complete";
    case SuiteOrigin::kMinimalCover: return "minimal-cover";
    case SuiteOrigin::kMinimalDiagnostic: return "minimal-diagnostic";
  }
  return "complete";
}

std::vector<std::string> TestSuite::Labels() const {
  std::vector<std::string> out;
  for (const TestTerm& t : terms) out.push_back(t.label);
  return out;
}

std::string Subscript(int n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (char d : digits) {
    out += "\xE2\x82";
    out += static_cast<char>(0x80 + (d - '0'));
  }
  return out;
}

void AssignTermLabels(std::vector<TestTerm>& terms) {
  std::map<std::string, int> total;
  std::map<std::size_t, std::set<std::vector<std::size_t>>> fan_out;
  for (const TestTerm& t : terms) {
    ++total[t.digits];
    if (!t.path.ribs.empty()) fan_out[t.path.ribs.front()].insert(t.path.ribs);
  }
  std::map<std::string, int> seen;
  for (TestTerm& t : terms) {
    t.occurrence = ++seen[t.digits];
    bool grouped = !t.path.ribs.empty() && fan_out[t.path.ribs.front()].size() > 1;
    t.label = t.digits;
    if (total[t.digits] > 1 || grouped) t.label += Subscript(t.occurrence);
  }
}

std::vector<TestTerm> ExpandTerms(const ActivationFormula& f,
                                  const std::vector<TestTerm>& so_far, const Caps& caps) {
  std::size_t product = 1;
  for (const auto& bracket : f.brackets) {
    if (bracket.empty()) return {};
    if (product > caps.max_terms / bracket.size()) {
      throw Error(ErrorCode::kTermExplosion,
                  "path " + f.path.label + " expands to more than " +
                      std::to_string(caps.max_terms) + " terms");
    }
    product *= bracket.size();
  }
  if (product > caps.max_terms) {
    throw Error(ErrorCode::kTermExplosion,
                "path " + f.path.label + " expands to more than " +
                    std::to_string(caps.max_terms) + " terms");
  }

  std::vector<TestTerm> all = so_far;
  std::vector<std::size_t> pick(f.brackets.size(), 0);
  for (std::size_t n = 0; n < product; ++n) {
    TestTerm t;
    t.path = f.path;
    for (std::size_t i = 0; i < pick.size(); ++i) {
      t.selection.push_back(f.brackets[i][pick[i]]);
      t.digits += std::to_string(f.brackets[i][pick[i]].opcode);
    }
    all.push_back(std::move(t));
    // Odometer with the last bracket varying fastest.
    for (std::size_t i = pick.size(); i-- > 0;) {
      if (++pick[i] < f.brackets[i].size()) break;
      pick[i] = 0;
    }
  }
  AssignTermLabels(all);
  return {all.begin() + static_cast<std::ptrdiff_t>(so_far.size()), all.end()};
}

TestSuite BuildCompleteTest(const RtGraph& g, const std::vector<Path>& paths,
                            const Caps& caps) {
  TestSuite suite;
  suite.origin = SuiteOrigin::kComplete;
  for (const Path& p : paths) {
    std::vector<TestTerm> terms = ExpandTerms(MakeActivationFormula(g, p), suite.terms, caps);
    if (suite.terms.size() + terms.size() > caps.max_terms) {
      throw Error(ErrorCode::kTermExplosion,
                  "complete test exceeds " + std::to_string(caps.max_terms) + " terms");
    }
    suite.terms.insert(suite.terms.end(), terms.begin(), terms.end());
  }
  AssignTermLabels(suite.terms);
  return suite;
}

PathCover MinimalPathCover(const RtGraph& g, const std::vector<Path>& paths,
                           CoverMode mode, const Caps& caps) {
  std::map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < g.nodes().size(); ++i) node_index[g.nodes()[i].name] = i;
  const std::size_t rib_offset = g.nodes().size();
  const std::size_t universe = rib_offset + g.ribs().size();

  std::vector<std::size_t> order = OrderByLabel(paths, [](const Path& p) { return p.label; });
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t idx : order) {
    const Path& p = paths[idx];
    std::vector<std::size_t> s;
    for (const std::string& n : p.nodes) s.push_back(node_index.at(n));
    for (std::size_t r : p.ribs) s.push_back(rib_offset + r);
    sets.push_back(std::move(s));
  }
  if (auto e = FirstUncoverable(sets, universe)) {
    std::string what = *e < rib_offset
                           ? "node " + g.nodes()[*e].name
                           : "rib " + g.ribs()[*e - rib_offset].fragment + " (" +
                                 g.ribs()[*e - rib_offset].src + "->" +
                                 g.ribs()[*e - rib_offset].dst + ")";
    throw Error(ErrorCode::kUncoverable, what + " lies on no path");
  }
  CoverSolution sol = SolveSetCover(sets, universe, mode, caps.exact_cover);
  std::vector<std::size_t> picked;
  for (std::size_t c : sol.chosen) picked.push_back(order[c]);
  std::sort(picked.begin(), picked.end());
  PathCover out;
  out.exact = sol.exact;
  for (std::size_t i : picked) out.paths.push_back(paths[i]);
  return out;
}

DiagnosticTest MinimalDiagnosticTest(const RtGraph& g, const TestSuite& complete,
                                     CoverMode mode, const Caps& caps) {
  std::vector<StatementId> columns = g.StatementIds();
  std::map<StatementId, std::size_t> column_index;
  for (std::size_t i = 0; i < columns.size(); ++i) column_index[columns[i]] = i;

  std::vector<std::size_t> order =
      OrderByLabel(complete.terms, [](const TestTerm& t) { return t.label; });
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t idx : order) {
    std::vector<std::size_t> s;
    for (const StatementId& id : complete.terms[idx].selection) s.push_back(column_index.at(id));
    sets.push_back(std::move(s));
  }
  if (auto e = FirstUncoverable(sets, columns.size())) {
    throw Error(ErrorCode::kUncoverable,
                "statement " + columns[*e].Label() + " is selected by no term");
  }
  CoverSolution sol = SolveSetCover(sets, columns.size(), mode, caps.exact_cover);
  std::vector<std::size_t> picked;
  for (std::size_t c : sol.chosen) picked.push_back(order[c]);
  std::sort(picked.begin(), picked.end());

  DiagnosticTest out;
  out.exact = sol.exact;
  out.suite.origin = SuiteOrigin::kMinimalDiagnostic;
  for (std::size_t i : picked) out.suite.terms.push_back(complete.terms[i]);
  return out;
}

TestSuite RestrictToPaths(const TestSuite& complete, const std::vector<Path>& cover) {
  TestSuite out;
  out.origin = SuiteOrigin::kMinimalCover;
  for (const TestTerm& t : complete.terms) {
    if (std::find(cover.begin(), cover.end(), t.path) != cover.end()) out.terms.push_back(t);
  }
  return out;
}

}  // namespace rtgdiag
