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

#include "rtgdiag/rtg.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "rtgdiag/error.h"

namespace rtgdiag {

namespace {

std::string FormatNumber(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

// Topological order via Kahn's algorithm; nullopt if the ribs form a cycle.
std::optional<std::vector<std::string>> TopologicalOrder(const RtGraph& g) {
  std::map<std::string, int> indegree;
  std::map<std::string, std::vector<std::string>> succ;
  for (const Node& n : g.nodes()) indegree[n.name];
  for (const Rib& r : g.ribs()) {
    if (!indegree.count(r.src) || !indegree.count(r.dst)) continue;
    ++indegree[r.dst];
    succ[r.src].push_back(r.dst);
  }
  std::vector<std::string> ready;
  for (const Node& n : g.nodes()) {
    if (indegree[n.name] == 0) ready.push_back(n.name);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string n = ready.front();
    ready.erase(ready.begin());
    order.push_back(n);
    for (const std::string& s : succ[n]) {
      if (--indegree[s] == 0) ready.push_back(s);
    }
  }
  if (order.size() != indegree.size()) return std::nullopt;
  return order;
}

std::string FragmentStem(const std::string& id) {
  std::size_t end = id.size();
  while (end > 0 && std::isupper(static_cast<unsigned char>(id[end - 1]))) --end;
  if (end == id.size() || end == 0 ||
      !std::isdigit(static_cast<unsigned char>(id[end - 1]))) {
    return id;
  }
  return id.substr(0, end);
}

}  // namespace

const OpAlphabet& OpAlphabet::Builtin() {
  static const OpAlphabet* alphabet = [] {
    auto* a = new OpAlphabet;
    a->Register({op::kAdd, "summation", 2});
    a->Register({op::kMul, "multiplication", 2});
    a->Register({op::kSub, "subtraction", 2});
    a->Register({op::kDiv, "division", 2});
    a->Register({op::kSin, "sine", 1});
    return a;
  }();
  return *alphabet;
}

void OpAlphabet::Register(OpCode op) {
  if (op.code <= 0) throw Error(ErrorCode::kFormat, "opcode must be positive");
  if (op.arity != 1 && op.arity != 2) {
    throw Error(ErrorCode::kFormat, "opcode arity must be 1 or 2");
  }
  if (Find(op.code) != nullptr) {
    throw Error(ErrorCode::kFormat,
                "opcode " + std::to_string(op.code) + " already registered");
  }
  ops_.push_back(std::move(op));
}

const OpCode* OpAlphabet::Find(int code) const {
  for (const OpCode& op : ops_) {
    if (op.code == code) return &op;
  }
  return nullptr;
}

std::string Operand::ToString() const {
  return is_variable() ? name : FormatNumber(value);
}

std::string Statement::ToString() const {
  std::string out = target + " := ";
  switch (opcode) {
    case op::kAdd: return out + operands[0].ToString() + " + " + operands[1].ToString();
    case op::kMul: return out + operands[0].ToString() + " * " + operands[1].ToString();
    case op::kSub: return out + operands[0].ToString() + " - " + operands[1].ToString();
    case op::kDiv: return out + operands[0].ToString() + " / " + operands[1].ToString();
    case op::kSin: return out + "sin(" + operands[0].ToString() + ")";
    default: break;
  }
  out += "op" + std::to_string(opcode) + "(";
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (i) out += ", ";
    out += operands[i].ToString();
  }
  return out + ")";
}

std::string StatementId::Label() const {
  std::string out = fragment + std::to_string(opcode);
  if (show_ordinal) out += "." + std::to_string(ordinal);
  return out;
}

std::strong_ordering operator<=>(const StatementId& a, const StatementId& b) {
  if (int c = NaturalCompare(a.fragment, b.fragment); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.opcode <=> b.opcode; c != 0) return c;
  return a.ordinal <=> b.ordinal;
}

int NaturalCompare(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string_view na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size() ? -1 : 1;
      if (int c = na.compare(nb); c != 0) return c < 0 ? -1 : 1;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
    ++i;
    ++j;
  }
  if (i == a.size() && j == b.size()) return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
  return i == a.size() ? -1 : 1;
}

std::string_view NodeRoleName(NodeRole role) {
  switch (role) {
    case NodeRole::kInput: return "input";
    case NodeRole::kInternal: return "internal";
    case NodeRole::kOutput: return "output";
  }
  return "internal";
}

RtGraph::RtGraph(std::vector<Node> nodes, std::vector<Rib> ribs,
                 std::vector<std::string> inputs, std::string output)
    : nodes_(std::move(nodes)),
      ribs_(std::move(ribs)),
      inputs_(std::move(inputs)),
      output_(std::move(output)) {}

const Node* RtGraph::FindNode(std::string_view name) const {
  for (const Node& n : nodes_) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

std::optional<std::string> RtGraph::InputNode() const {
  for (const Node& n : nodes_) {
    if (n.role == NodeRole::kInput) return n.name;
  }
  return std::nullopt;
}

std::optional<std::string> RtGraph::OutputNode() const {
  for (const Node& n : nodes_) {
    if (n.role == NodeRole::kOutput) return n.name;
  }
  return std::nullopt;
}

std::vector<std::string> RtGraph::Fragments() const {
  std::map<std::string, int> depth;
  for (const Node& n : nodes_) depth[n.name] = 0;
  if (auto order = TopologicalOrder(*this)) {
    for (const std::string& n : *order) {
      for (const Rib& r : ribs_) {
        if (r.src == n && depth.count(r.dst)) {
          depth[r.dst] = std::max(depth[r.dst], depth[n] + 1);
        }
      }
    }
  }
  std::map<std::string, int> rank;
  for (const Rib& r : ribs_) {
    int d = depth.count(r.src) ? depth[r.src] : 0;
    auto [it, inserted] = rank.emplace(r.fragment, d);
    if (!inserted) it->second = std::max(it->second, d);
  }
  std::vector<std::string> out;
  for (const auto& [f, _] : rank) out.push_back(f);
  std::sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    if (rank[a] != rank[b]) return rank[a] < rank[b];
    return NaturalCompare(a, b) < 0;
  });
  return out;
}

const std::vector<Statement>* RtGraph::FragmentStatements(
    std::string_view fragment) const {
  for (const Rib& r : ribs_) {
    if (r.fragment == fragment) return &r.statements;
  }
  return nullptr;
}

StatementId RtGraph::IdOf(const std::string& fragment,
                          const Statement& statement) const {
  StatementId id{fragment, statement.opcode, statement.ordinal, false};
  if (const auto* stmts = FragmentStatements(fragment)) {
    for (const Statement& s : *stmts) {
      if (s.ordinal != statement.ordinal && s.opcode == statement.opcode) {
        id.show_ordinal = true;
      }
    }
  }
  return id;
}

std::vector<StatementId> RtGraph::StatementIds() const {
  std::vector<StatementId> out;
  for (const std::string& f : Fragments()) {
    std::vector<StatementId> ids;
    for (const Statement& s : *FragmentStatements(f)) ids.push_back(IdOf(f, s));
    std::sort(ids.begin(), ids.end());
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

std::vector<StatementId> RtGraph::RibStatementIds(std::size_t rib_index) const {
  const Rib& r = ribs_.at(rib_index);
  std::vector<StatementId> out;
  for (const Statement& s : r.statements) out.push_back(IdOf(r.fragment, s));
  return out;
}

std::vector<std::string> RtGraph::Variables() const {
  std::set<std::string> vars(inputs_.begin(), inputs_.end());
  if (!output_.empty()) vars.insert(output_);
  for (const Rib& r : ribs_) {
    for (const Statement& s : r.statements) {
      vars.insert(s.target);
      for (const Operand& o : s.operands) {
        if (o.is_variable()) vars.insert(o.name);
      }
    }
  }
  return {vars.begin(), vars.end()};
}

std::vector<Violation> ValidateGraph(const RtGraph& g) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };

  std::set<std::string> names;
  int inputs = 0, outputs = 0;
  for (const Node& n : g.nodes()) {
    if (!names.insert(n.name).second) add("duplicate-node", "node " + n.name + " declared twice");
    if (n.role == NodeRole::kInput) ++inputs;
    if (n.role == NodeRole::kOutput) ++outputs;
  }
  if (inputs == 0) add("no-input-node", "graph has no input node");
  if (inputs > 1) add("multiple-input-nodes", "graph has more than one input node");
  if (outputs == 0) add("no-output-reachable", "no output node reachable: graph has no output node");
  if (outputs > 1) add("multiple-output-nodes", "graph has more than one output node");

  const OpAlphabet& alphabet = OpAlphabet::Builtin();
  std::map<std::string, const Rib*> first_by_fragment;
  for (const Rib& r : g.ribs()) {
    std::string where = "rib " + r.fragment + " (" + r.src + "->" + r.dst + ")";
    if (!names.count(r.src)) add("unknown-node", where + " starts at unknown node " + r.src);
    if (!names.count(r.dst)) add("unknown-node", where + " ends at unknown node " + r.dst);
    if (r.statements.empty()) add("empty-rib", where + " has no statements");
    for (std::size_t i = 0; i < r.statements.size(); ++i) {
      const Statement& s = r.statements[i];
      if (s.ordinal != static_cast<int>(i) + 1) {
        add("bad-ordinal", where + " statement " + std::to_string(i + 1) +
                               " has ordinal " + std::to_string(s.ordinal));
      }
      const OpCode* op = alphabet.Find(s.opcode);
      if (op == nullptr) {
        add("unknown-opcode", where + " uses unknown opcode " + std::to_string(s.opcode));
      } else if (static_cast<int>(s.operands.size()) != op->arity) {
        add("bad-arity", where + " statement " + std::to_string(s.ordinal) + " has " +
                             std::to_string(s.operands.size()) + " operands, " +
                             op->name + " takes " + std::to_string(op->arity));
      }
    }
    auto [it, inserted] = first_by_fragment.emplace(r.fragment, &r);
    if (!inserted && it->second->statements != r.statements) {
      add("inconsistent-fragment",
          "fragment " + r.fragment + " carries different statements on different ribs");
    }
  }

  if (!TopologicalOrder(g)) {
    add("cycle-detected", "cycle detected in the rib relation");
    return out;
  }
  auto in = g.InputNode();
  auto outn = g.OutputNode();
  if (inputs != 1 || outputs != 1) return out;

  auto reach = [&](const std::string& start, bool forward) {
    std::set<std::string> seen{start};
    std::vector<std::string> stack{start};
    while (!stack.empty()) {
      std::string n = stack.back();
      stack.pop_back();
      for (const Rib& r : g.ribs()) {
        const std::string& from = forward ? r.src : r.dst;
        const std::string& to = forward ? r.dst : r.src;
        if (from == n && seen.insert(to).second) stack.push_back(to);
      }
    }
    return seen;
  };
  std::set<std::string> fwd = reach(*in, true);
  std::set<std::string> bwd = reach(*outn, false);
  if (!fwd.count(*outn)) {
    add("no-output-reachable", "no output node reachable from input node " + *in);
  }
  for (const Node& n : g.nodes()) {
    if (n.role != NodeRole::kInternal) continue;
    if (!fwd.count(n.name) || !bwd.count(n.name)) {
      add("dangling-node", "node " + n.name + " lies on no input-to-output path");
    }
  }
  return out;
}

void RequireValid(const RtGraph& g) {
  auto violations = ValidateGraph(g);
  if (violations.empty()) return;
  std::string msg = "invalid graph:";
  for (const Violation& v : violations) msg += "\n  [" + v.code + "] " + v.message;
  throw Error(ErrorCode::kInvalidGraph, msg);
}

RtGraph MergeEquivalentRibs(const RtGraph& g) {
  std::map<std::string, const Rib*> by_fragment;
  for (const Rib& r : g.ribs()) {
    auto [it, inserted] = by_fragment.emplace(r.fragment, &r);
    if (!inserted && it->second->statements != r.statements) {
      throw Error(ErrorCode::kMergeConflict,
                  "fragment " + r.fragment + " appears on ribs with different statements");
    }
  }

  std::vector<Rib> ribs = g.ribs();
  // Candidate groups: same source key and destination.
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < ribs.size(); ++i) {
    if (ribs[i].source_key.empty()) continue;
    groups[{ribs[i].source_key, ribs[i].dst}].push_back(i);
  }
  for (const auto& [key, members] : groups) {
    std::vector<bool> done(members.size(), false);
    for (std::size_t a = 0; a < members.size(); ++a) {
      if (done[a]) continue;
      std::vector<std::size_t> cls{members[a]};
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (!done[b] && ribs[members[b]].statements == ribs[members[a]].statements) {
          cls.push_back(members[b]);
          done[b] = true;
        }
      }
      std::set<std::string> ids;
      for (std::size_t i : cls) ids.insert(ribs[i].fragment);
      if (ids.size() < 2) continue;

      std::set<std::string> stems;
      for (const std::string& id : ids) stems.insert(FragmentStem(id));
      std::string merged = *std::min_element(ids.begin(), ids.end(), [](auto& x, auto& y) {
        return NaturalCompare(x, y) < 0;
      });
      if (stems.size() == 1) {
        const std::string& stem = *stems.begin();
        auto it = by_fragment.find(stem);
        if (ids.count(stem) || it == by_fragment.end() ||
            it->second->statements == ribs[cls.front()].statements) {
          merged = stem;
        }
      }
      for (std::size_t i : cls) ribs[i].fragment = merged;
    }
  }
  return RtGraph(g.nodes(), std::move(ribs), g.inputs(), g.output());
}

}  // namespace rtgdiag
