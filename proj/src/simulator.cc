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

#include "rtgdiag/simulator.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rtgdiag/error.h"

namespace rtgdiag {

using nlohmann::json;

namespace {

double Lookup(const Env& env, const std::string& name) {
  auto it = env.find(name);
  if (it == env.end()) {
    throw Error(ErrorCode::kUnboundVariable, "unbound variable '" + name + "'");
  }
  return it->second;
}

double Divide(double a, double b) {
  if (b == 0.0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
  return a / b;
}

double ApplyStatement(const Statement& s, const Env& env) {
  auto value = [&](std::size_t i) {
    const Operand& o = s.operands.at(i);
    return o.is_variable() ? Lookup(env, o.name) : o.value;
  };
  switch (s.opcode) {
    case op::kAdd: return value(0) + value(1);
    case op::kMul: return value(0) * value(1);
    case op::kSub: return value(0) - value(1);
    case op::kDiv: return Divide(value(0), value(1));
    case op::kSin: return std::sin(value(0));
  }
  throw Error(ErrorCode::kUnsupportedOperation,
              "opcode " + std::to_string(s.opcode) + " has no semantics");
}

std::string FormatNumber(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool OutputsDiffer(double golden, double mutant, double tolerance) {
  if (std::isnan(golden) || std::isnan(mutant)) return std::isnan(golden) != std::isnan(mutant);
  if (std::isinf(golden) || std::isinf(mutant)) return golden != mutant;
  return std::abs(golden - mutant) > tolerance * std::max(1.0, std::abs(golden));
}

// Interval of a single-variable comparison against a constant.
std::optional<std::pair<std::string, Interval>> SimpleConstraint(const Comparison& c) {
  const Expr* var = nullptr;
  std::optional<double> bound;
  RelOp op = c.op;
  if (c.lhs->kind == Expr::Kind::kVariable) {
    var = c.lhs.get();
    bound = ConstantValue(*c.rhs);
  } else if (c.rhs->kind == Expr::Kind::kVariable) {
    var = c.rhs.get();
    bound = ConstantValue(*c.lhs);
    switch (op) {  // k < x  <=>  x > k
      case RelOp::kLt: op = RelOp::kGt; break;
      case RelOp::kLe: op = RelOp::kGe; break;
      case RelOp::kGt: op = RelOp::kLt; break;
      case RelOp::kGe: op = RelOp::kLe; break;
    }
  }
  if (var == nullptr || !bound || std::isnan(*bound)) return std::nullopt;
  Interval i;
  switch (op) {
    case RelOp::kLt: i.hi = *bound; break;
    case RelOp::kLe: i.hi = *bound; i.hi_closed = true; break;
    case RelOp::kGt: i.lo = *bound; break;
    case RelOp::kGe: i.lo = *bound; i.lo_closed = true; break;
  }
  return std::make_pair(var->name, i);
}

// Per-variable feasible sets of a conjunction; nullopt if some comparison is
// not a single-variable bound.
std::optional<std::map<std::string, IntervalSet>> GuardSets(const Guard& g) {
  std::map<std::string, IntervalSet> out;
  for (const Comparison& c : g.terms) {
    auto simple = SimpleConstraint(c);
    if (!simple) return std::nullopt;
    auto [it, inserted] = out.emplace(simple->first, IntervalSet::Of(simple->second));
    if (!inserted) it->second = it->second.Intersect(IntervalSet::Of(simple->second));
  }
  return out;
}

Interval IntersectIntervals(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

}  // namespace

const Observation* ObservationTrace::Find(const std::string& node) const {
  for (const Observation& o : points) {
    if (o.node == node) return &o;
  }
  return nullptr;
}

std::optional<double> ConstantValue(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kNumber: return e.value;
    case Expr::Kind::kVariable: return std::nullopt;
    case Expr::Kind::kNegate: {
      auto v = ConstantValue(*e.lhs);
      if (!v) return std::nullopt;
      return -*v;
    }
    case Expr::Kind::kSin: {
      auto v = ConstantValue(*e.lhs);
      if (!v) return std::nullopt;
      return std::sin(*v);
    }
    case Expr::Kind::kBinary: {
      auto a = ConstantValue(*e.lhs);
      auto b = ConstantValue(*e.rhs);
      if (!a || !b) return std::nullopt;
      switch (e.op) {
        case '+': return *a + *b;
        case '-': return *a - *b;
        case '*': return *a * *b;
        case '/': return *b == 0.0 ? std::nullopt : std::optional<double>(*a / *b);
      }
    }
  }
  return std::nullopt;
}

double Evaluate(const Expr& e, const Env& env) {
  switch (e.kind) {
    case Expr::Kind::kNumber: return e.value;
    case Expr::Kind::kVariable: return Lookup(env, e.name);
    case Expr::Kind::kNegate: return -Evaluate(*e.lhs, env);
    case Expr::Kind::kSin: return std::sin(Evaluate(*e.lhs, env));
    case Expr::Kind::kBinary: {
      double a = Evaluate(*e.lhs, env);
      double b = Evaluate(*e.rhs, env);
      switch (e.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return Divide(a, b);
      }
    }
  }
  throw Error(ErrorCode::kUnsupportedOperation, "cannot evaluate expression");
}

bool Holds(const Guard& g, const Env& env) {
  for (const Comparison& c : g.terms) {
    double a = Evaluate(*c.lhs, env);
    double b = Evaluate(*c.rhs, env);
    bool ok = false;
    switch (c.op) {
      case RelOp::kLt: ok = a < b; break;
      case RelOp::kLe: ok = a <= b; break;
      case RelOp::kGt: ok = a > b; break;
      case RelOp::kGe: ok = a >= b; break;
    }
    if (!ok) return false;
  }
  return true;
}

ObservationTrace ExecuteProgram(const Program& p, const Stimulus& s) {
  Env env = s.env;
  ObservationTrace trace;
  for (const std::string& in : p.inputs) Lookup(env, in);
  if (!p.inputs.empty()) {
    trace.points.push_back({kInputNodeName, p.inputs.front(), env.at(p.inputs.front())});
  }
  auto observe = [&](const std::string& node, const std::string& var) {
    if (node == kOutputNodeName) return;
    trace.points.push_back({node, var, env.at(var)});
  };
  for (const Block& b : PlanBlocks(p)) {
    if (b.chain) {
      for (std::size_t k = 0; k < b.chain->arms.size(); ++k) {
        const IfArm& arm = b.chain->arms[k];
        if (arm.guard && !Holds(*arm.guard, env)) continue;
        for (const Assignment& a : arm.body) env[a.target] = Evaluate(*a.value, env);
        observe(b.end_nodes[k], arm.body.back().target);
        break;
      }
      continue;
    }
    for (const Assignment* a : b.straight) env[a->target] = Evaluate(*a->value, env);
    if (!b.straight.empty()) observe(b.end_nodes.front(), b.straight.back()->target);
  }
  trace.output = Lookup(env, p.output);
  trace.points.push_back({kOutputNodeName, p.output, trace.output});
  return trace;
}

std::vector<std::string> FreeVariables(const RtGraph& g, const Path& p) {
  std::set<std::string> assigned;
  std::vector<std::string> free;
  for (std::size_t r : p.ribs) {
    for (const Statement& s : g.ribs()[r].statements) {
      for (const Operand& o : s.operands) {
        if (o.is_variable() && !assigned.count(o.name) &&
            std::find(free.begin(), free.end(), o.name) == free.end()) {
          free.push_back(o.name);
        }
      }
      assigned.insert(s.target);
    }
  }
  if (!g.output().empty() && !assigned.count(g.output()) &&
      std::find(free.begin(), free.end(), g.output()) == free.end()) {
    free.push_back(g.output());
  }
  return free;
}

ObservationTrace ExecutePath(const RtGraph& g, const Path& p, const Stimulus& s,
                             const ExecOptions& options) {
  Env env = s.env;
  ObservationTrace trace;
  std::vector<std::string> free = FreeVariables(g, p);
  std::vector<std::string> missing;
  for (const std::string& v : free) {
    if (!env.count(v)) missing.push_back(v);
  }
  if (!missing.empty()) {
    std::string names;
    for (const std::string& v : missing) names += (names.empty() ? "" : ", ") + v;
    if (!options.permissive) {
      throw Error(ErrorCode::kUnboundVariable,
                  "path " + p.label + " reads unbound free variables: " + names);
    }
    for (const std::string& v : missing) env[v] = 0.0;
    trace.warnings.push_back("path " + p.label + ": defaulted free variables to 0: " + names);
  }

  std::string input_var = !g.inputs().empty() ? g.inputs().front()
                          : !free.empty()     ? free.front()
                                              : std::string();
  if (!p.nodes.empty() && !input_var.empty() && env.count(input_var)) {
    trace.points.push_back({p.nodes.front(), input_var, env.at(input_var)});
  }
  const std::string output_node = g.OutputNode().value_or(kOutputNodeName);
  std::string last;
  for (std::size_t r : p.ribs) {
    const Rib& rib = g.ribs()[r];
    for (const Statement& st : rib.statements) {
      env[st.target] = ApplyStatement(st, env);
      last = st.target;
    }
    std::string var = rib.dst == output_node && !g.output().empty() ? g.output() : last;
    trace.points.push_back({rib.dst, var, Lookup(env, var)});
  }
  trace.output = trace.points.empty() ? 0.0 : trace.points.back().value;
  return trace;
}

FaultSpec FaultSpec::Parse(const std::string& text) {
  auto fail = [&] {
    throw Error(ErrorCode::kFormat,
                "fault '" + text + "' must look like I5:3:op=3 or I5:3:const=2.5");
  };
  auto c1 = text.find(':');
  auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) fail();
  FaultSpec f;
  f.fragment = text.substr(0, c1);
  try {
    std::size_t used = 0;
    std::string ordinal = text.substr(c1 + 1, c2 - c1 - 1);
    f.ordinal = std::stoi(ordinal, &used);
    if (used != ordinal.size()) fail();
    std::string mutation = text.substr(c2 + 1);
    if (mutation.rfind("op=", 0) == 0) {
      f.kind = Kind::kOpcode;
      f.new_opcode = std::stoi(mutation.substr(3), &used);
      if (used != mutation.size() - 3) fail();
    } else if (mutation.rfind("const=", 0) == 0) {
      f.kind = Kind::kConstant;
      f.new_constant = std::stod(mutation.substr(6), &used);
      if (used != mutation.size() - 6) fail();
    } else {
      fail();
    }
  } catch (const std::logic_error&) {
    fail();
  }
  if (f.fragment.empty()) fail();
  return f;
}

std::string FaultSpec::ToString() const {
  std::string out = fragment + ":" + std::to_string(ordinal) + ":";
  if (kind == Kind::kOpcode) return out + "op=" + std::to_string(new_opcode);
  return out + "const=" + FormatNumber(new_constant);
}

RtGraph InjectFault(const RtGraph& g, const FaultSpec& f) {
  const std::vector<Statement>* stmts = g.FragmentStatements(f.fragment);
  if (stmts == nullptr) {
    throw Error(ErrorCode::kNoSuchStatement, "no fragment " + f.fragment + " in the graph");
  }
  auto it = std::find_if(stmts->begin(), stmts->end(),
                         [&](const Statement& s) { return s.ordinal == f.ordinal; });
  if (it == stmts->end()) {
    throw Error(ErrorCode::kNoSuchStatement, "fragment " + f.fragment + " has no statement " +
                                                 std::to_string(f.ordinal));
  }
  Statement mutated = *it;
  const std::string where = f.fragment + ":" + std::to_string(f.ordinal);
  if (f.kind == FaultSpec::Kind::kOpcode) {
    const OpAlphabet& alphabet = OpAlphabet::Builtin();
    const OpCode* from = alphabet.Find(mutated.opcode);
    const OpCode* to = alphabet.Find(f.new_opcode);
    if (to == nullptr) {
      throw Error(ErrorCode::kArityMismatch, "opcode " + std::to_string(f.new_opcode) +
                                                 " is not in the operation alphabet");
    }
    if (f.new_opcode == mutated.opcode) {
      throw Error(ErrorCode::kNoOpMutation, where + " already has opcode " +
                                                std::to_string(f.new_opcode));
    }
    if (from == nullptr || from->arity != to->arity) {
      throw Error(ErrorCode::kArityMismatch,
                  where + ": " + (from ? from->name : "unknown") + " cannot become " + to->name);
    }
    mutated.opcode = f.new_opcode;
  } else {
    std::optional<std::size_t> slot;
    if (f.operand) {
      if (*f.operand >= 0 && static_cast<std::size_t>(*f.operand) < mutated.operands.size() &&
          !mutated.operands[*f.operand].is_variable()) {
        slot = static_cast<std::size_t>(*f.operand);
      }
    } else {
      for (std::size_t i = 0; i < mutated.operands.size() && !slot; ++i) {
        if (!mutated.operands[i].is_variable()) slot = i;
      }
    }
    if (!slot) {
      throw Error(ErrorCode::kNoSuchStatement, where + " has no such constant operand");
    }
    if (mutated.operands[*slot].value == f.new_constant) {
      throw Error(ErrorCode::kNoOpMutation,
                  where + " already uses constant " + FormatNumber(f.new_constant));
    }
    mutated.operands[*slot].value = f.new_constant;
  }

  std::vector<Rib> ribs = g.ribs();
  for (Rib& r : ribs) {
    if (r.fragment != f.fragment) continue;
    for (Statement& s : r.statements) {
      if (s.ordinal == f.ordinal) s = mutated;
    }
  }
  return RtGraph(g.nodes(), std::move(ribs), g.inputs(), g.output());
}

std::vector<FaultSpec> MutationCatalogue(const RtGraph& g) {
  std::vector<FaultSpec> out;
  for (const std::string& fragment : g.Fragments()) {
    for (const Statement& s : *g.FragmentStatements(fragment)) {
      int swap = s.opcode == op::kAdd   ? op::kSub
                 : s.opcode == op::kSub ? op::kAdd
                 : s.opcode == op::kMul ? op::kDiv
                 : s.opcode == op::kDiv ? op::kMul
                                        : 0;
      if (swap != 0) {
        FaultSpec f;
        f.fragment = fragment;
        f.ordinal = s.ordinal;
        f.new_opcode = swap;
        out.push_back(f);
      }
      for (const Operand& o : s.operands) {
        if (o.is_variable()) continue;
        FaultSpec f;
        f.fragment = fragment;
        f.ordinal = s.ordinal;
        f.kind = FaultSpec::Kind::kConstant;
        f.new_constant = o.value + 1.0;
        out.push_back(f);
        break;
      }
    }
  }
  return out;
}

ResponseVector RunSuite(const RtGraph& golden, const RtGraph& mutant, const TestSuite& suite,
                        const std::map<std::string, Stimulus>& stimuli,
                        const RunOptions& options) {
  ResponseVector v;
  ExecOptions exec{options.permissive};
  for (const TestTerm& term : suite.terms) {
    auto it = stimuli.find(term.label);
    if (it == stimuli.end()) {
      throw Error(ErrorCode::kUnboundVariable, "term " + term.label + ": no stimulus");
    }
    try {
      double expected = ExecutePath(golden, term.path, it->second, exec).output;
      double observed = ExecutePath(mutant, term.path, it->second, exec).output;
      v.bits.push_back(OutputsDiffer(expected, observed, options.tolerance) ? 1 : 0);
    } catch (const Error& e) {
      throw Error(e.code(), "term " + term.label + ": " + e.what());
    }
  }
  return v;
}

bool Interval::Empty() const {
  if (lo > hi) return true;
  return lo == hi && !(lo_closed && hi_closed);
}

bool Interval::Contains(double x) const {
  bool above = lo_closed ? x >= lo : x > lo;
  bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

IntervalSet IntervalSet::All() { return Of(Interval{}); }

IntervalSet IntervalSet::Of(Interval i) {
  IntervalSet s;
  if (std::isinf(i.lo)) i.lo_closed = false;
  if (std::isinf(i.hi)) i.hi_closed = false;
  if (!i.Empty()) s.parts_.push_back(i);
  return s;
}

IntervalSet IntervalSet::Intersect(const IntervalSet& other) const {
  IntervalSet out;
  for (const Interval& a : parts_) {
    for (const Interval& b : other.parts_) {
      Interval r = IntersectIntervals(a, b);
      if (!r.Empty()) out.parts_.push_back(r);
    }
  }
  std::sort(out.parts_.begin(), out.parts_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return out;
}

IntervalSet IntervalSet::Complement() const {
  IntervalSet out;
  Interval gap;
  gap.lo = -std::numeric_limits<double>::infinity();
  gap.lo_closed = false;
  for (const Interval& p : parts_) {
    gap.hi = p.lo;
    gap.hi_closed = !p.lo_closed && !std::isinf(p.lo);
    if (!gap.Empty() && !(std::isinf(gap.hi) && gap.hi < 0)) out.parts_.push_back(gap);
    gap.lo = p.hi;
    gap.lo_closed = !p.hi_closed && !std::isinf(p.hi);
  }
  gap.hi = std::numeric_limits<double>::infinity();
  gap.hi_closed = false;
  if (!gap.Empty() && !(std::isinf(gap.lo) && gap.lo > 0)) out.parts_.push_back(gap);
  return out;
}

bool IntervalSet::Contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const Interval& i) { return i.Contains(x); });
}

double IntervalSet::Pick() const {
  if (parts_.empty()) throw Error(ErrorCode::kInfeasiblePath, "empty feasible set");
  const Interval& i = parts_.front();
  bool lo_inf = std::isinf(i.lo), hi_inf = std::isinf(i.hi);
  if (lo_inf && hi_inf) return kDefaultInputValue;
  if (lo_inf) return i.hi - 1.0;
  if (hi_inf) return i.lo + 1.0;
  return i.lo + (i.hi - i.lo) / 2.0;
}

std::vector<ArmCondition> PathConditions(const Path& p, const RtGraph& g,
                                         const SourceMap& map) {
  std::vector<ArmCondition> out;
  for (std::size_t r : p.ribs) {
    const FragmentInfo* info = map.FindFragment(g.ribs()[r].fragment);
    if (info && info->condition) out.push_back(*info->condition);
  }
  return out;
}

Stimulus PickStimulus(const RtGraph& g, const Path& p, const SourceMap* map) {
  Stimulus s;
  s.label = p.label;
  std::vector<std::string> free = FreeVariables(g, p);
  std::set<std::string> inputs(g.inputs().begin(), g.inputs().end());
  for (const std::string& in : g.inputs()) s.env[in] = kDefaultInputValue;
  for (const std::string& v : free) {
    if (!inputs.count(v)) s.env[v] = 0.0;
  }
  if (map == nullptr) return s;

  std::map<std::string, IntervalSet> feasible;
  auto restrict = [&](const std::string& var, const IntervalSet& set) {
    if (!s.env.count(var)) return;  // only stimulus-bound variables can be chosen
    auto [it, inserted] = feasible.emplace(var, set);
    if (!inserted) it->second = it->second.Intersect(set);
  };
  for (const ArmCondition& cond : PathConditions(p, g, *map)) {
    if (cond.guard) {
      if (auto sets = GuardSets(*cond.guard)) {
        for (const auto& [var, set] : *sets) restrict(var, set);
      }
    }
    for (const Guard& neg : cond.negated) {
      auto sets = GuardSets(neg);
      // The negation of a conjunction over several variables is not a
      // per-variable constraint.
      if (!sets || sets->size() != 1) continue;
      restrict(sets->begin()->first, sets->begin()->second.Complement());
    }
  }
  for (const auto& [var, set] : feasible) {
    if (set.Empty()) {
      throw Error(ErrorCode::kInfeasiblePath,
                  "path " + p.label + " is infeasible: no value of " + var +
                      " satisfies its guards");
    }
    s.env[var] = set.Pick();
  }
  return s;
}

std::map<std::string, Stimulus> StimuliFromJson(const json& j) {
  try {
    std::map<std::string, Stimulus> out;
    for (const auto& [label, bindings] : j.items()) {
      Stimulus s;
      s.label = label;
      for (const auto& [var, value] : bindings.items()) s.env[var] = value.get<double>();
      out.emplace(label, std::move(s));
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("malformed stimuli document: ") + e.what());
  }
}

json StimuliToJson(const std::map<std::string, Stimulus>& stimuli) {
  json j = json::object();
  for (const auto& [label, s] : stimuli) {
    json env = json::object();
    for (const auto& [var, value] : s.env) env[var] = value;
    j[label] = env;
  }
  return j;
}

StimulusPlan PlanStimuli(const RtGraph& g, const TestSuite& suite, const SourceMap* map) {
  StimulusPlan plan;
  std::map<std::string, std::optional<Stimulus>> by_path;
  for (const TestTerm& term : suite.terms) {
    auto it = by_path.find(term.path.label);
    if (it == by_path.end()) {
      std::optional<Stimulus> picked;
      try {
        picked = PickStimulus(g, term.path, map);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInfeasiblePath) throw;
        plan.infeasible_paths.push_back(term.path.label);
      }
      it = by_path.emplace(term.path.label, std::move(picked)).first;
    }
    if (!it->second) continue;
    Stimulus s = *it->second;
    s.label = term.label;
    plan.stimuli.emplace(term.label, std::move(s));
  }
  return plan;
}

}  // namespace rtgdiag
