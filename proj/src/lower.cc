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

#include <algorithm>

#include "rtgdiag/frontend.h"

namespace rtgdiag {

namespace {

int OpcodeFor(char op) {
  switch (op) {
    case '+': return op::kAdd;
    case '*': return op::kMul;
    case '-': return op::kSub;
    case '/': return op::kDiv;
  }
  throw Error(ErrorCode::kUnsupportedOperation,
              std::string("operator '") + op + "' is outside the operation alphabet");
}

void CollectNames(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::kVariable) out.insert(e.name);
  if (e.lhs) CollectNames(*e.lhs, out);
  if (e.rhs) CollectNames(*e.rhs, out);
}

std::set<std::string> ProgramNames(const Program& p) {
  std::set<std::string> names(p.inputs.begin(), p.inputs.end());
  names.insert(p.output);
  auto add_assignment = [&](const Assignment& a) {
    names.insert(a.target);
    CollectNames(*a.value, names);
  };
  for (const BodyItem& item : p.body) {
    if (const auto* a = std::get_if<Assignment>(&item)) {
      add_assignment(*a);
      continue;
    }
    for (const IfArm& arm : std::get<IfChain>(item).arms) {
      for (const Assignment& a : arm.body) add_assignment(a);
    }
  }
  return names;
}

std::string LetterSuffix(std::size_t index) {
  std::string s;
  ++index;
  while (index > 0) {
    --index;
    s.insert(s.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return s;
}

SourceSpan Cover(const std::vector<const Assignment*>& run) {
  SourceSpan s = run.front()->span;
  s.end_line = run.back()->span.end_line;
  s.end_column = run.back()->span.end_column;
  return s;
}

std::string KeyOf(const SourceSpan& s) {
  return "L" + std::to_string(s.line) + ":" + std::to_string(s.column);
}

}  // namespace

std::string TempNames::Next() {
  while (true) {
    std::string name = "t" + std::to_string(next_++);
    if (!reserved_.count(name)) return name;
  }
}

LoweredExpr LowerExpression(const Expr& e, TempNames& fresh,
                            const std::optional<std::string>& target) {
  LoweredExpr out;
  auto emit = [&](int opcode, std::vector<Operand> operands) {
    Statement s;
    s.opcode = opcode;
    s.target = target ? *target : fresh.Next();
    s.operands = std::move(operands);
    out.result = Operand::Var(s.target);
    out.statements.push_back(std::move(s));
  };
  switch (e.kind) {
    case Expr::Kind::kNumber:
      out.result = Operand::Const(e.value);
      return out;
    case Expr::Kind::kVariable:
      out.result = Operand::Var(e.name);
      return out;
    case Expr::Kind::kNegate: {
      if (e.lhs->is_number()) {
        out.result = Operand::Const(-e.lhs->value);
        return out;
      }
      LoweredExpr inner = LowerExpression(*e.lhs, fresh);
      out.statements = std::move(inner.statements);
      emit(op::kMul, {inner.result, Operand::Const(-1.0)});
      return out;
    }
    case Expr::Kind::kSin: {
      LoweredExpr inner = LowerExpression(*e.lhs, fresh);
      out.statements = std::move(inner.statements);
      emit(op::kSin, {inner.result});
      return out;
    }
    case Expr::Kind::kBinary: {
      int opcode = OpcodeFor(e.op);
      LoweredExpr l = LowerExpression(*e.lhs, fresh);
      LoweredExpr r = LowerExpression(*e.rhs, fresh);
      out.statements = std::move(l.statements);
      out.statements.insert(out.statements.end(), r.statements.begin(), r.statements.end());
      Operand a = l.result, b = r.result;
      if ((opcode == op::kAdd || opcode == op::kMul) && !a.is_variable() && b.is_variable()) {
        std::swap(a, b);
      }
      emit(opcode, {a, b});
      return out;
    }
  }
  throw Error(ErrorCode::kUnsupportedOperation, "unsupported expression");
}

std::vector<Statement> LowerAssignment(const Assignment& a, TempNames& fresh) {
  LoweredExpr lowered = LowerExpression(*a.value, fresh, a.target);
  if (lowered.statements.empty()) {
    Statement copy;
    copy.opcode = op::kAdd;
    copy.target = a.target;
    copy.operands = {lowered.result, Operand::Const(0.0)};
    lowered.statements.push_back(std::move(copy));
  }
  return lowered.statements;
}

const FragmentInfo* SourceMap::FindFragment(const std::string& fragment) const {
  auto it = fragments.find(fragment);
  return it == fragments.end() ? nullptr : &it->second;
}

std::vector<Block> PlanBlocks(const Program& p) {
  std::vector<Block> blocks;
  std::vector<const Assignment*> run;
  auto flush = [&] {
    if (run.empty()) return;
    Block b;
    b.straight = std::move(run);
    run.clear();
    blocks.push_back(std::move(b));
  };
  for (const BodyItem& item : p.body) {
    if (const auto* a = std::get_if<Assignment>(&item)) {
      run.push_back(a);
      continue;
    }
    flush();
    Block b;
    b.chain = &std::get<IfChain>(item);
    blocks.push_back(std::move(b));
  }
  flush();
  if (blocks.empty()) blocks.emplace_back();  // `input x; output x;`

  int node = 1, fragment = 1;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Block& b = blocks[i];
    bool last = i + 1 == blocks.size();
    std::size_t arms = b.chain ? b.chain->arms.size() : 1;
    for (std::size_t k = 0; k < arms; ++k) {
      b.end_nodes.push_back(last ? kOutputNodeName : "R" + std::to_string(node++));
      b.fragments.push_back("I" + std::to_string(fragment++));
    }
  }
  return blocks;
}

BuildResult BuildRtg(const Program& p) {
  TempNames fresh(ProgramNames(p));
  std::vector<Block> blocks = PlanBlocks(p);

  std::vector<Node> nodes{{kInputNodeName, NodeRole::kInput}};
  std::vector<Rib> ribs;
  struct Origin {
    FragmentInfo info;
    std::vector<SourceSpan> statement_spans;
  };
  std::map<std::string, Origin> origins;  // by source key

  std::vector<std::string> current{kInputNodeName};
  for (const Block& b : blocks) {
    std::size_t arms = b.end_nodes.size();
    for (std::size_t k = 0; k < arms; ++k) {
      std::vector<Statement> statements;
      Origin origin;
      std::string key;
      auto append = [&](const Assignment& a) {
        for (Statement& s : LowerAssignment(a, fresh)) {
          statements.push_back(std::move(s));
          origin.statement_spans.push_back(a.span);
        }
      };
      if (b.chain) {
        const IfChain& chain = *b.chain;
        const IfArm& arm = chain.arms[k];
        for (const Assignment& a : arm.body) append(a);
        ArmCondition cond;
        cond.guard = arm.guard;
        for (std::size_t j = 0; j < k; ++j) cond.negated.push_back(*chain.arms[j].guard);
        origin.info.span = arm.span;
        origin.info.condition = std::move(cond);
      } else if (!b.straight.empty()) {
        for (const Assignment* a : b.straight) append(*a);
        origin.info.span = Cover(b.straight);
      } else {
        Assignment copy{p.output, Expr::Variable(p.output), {}};
        append(copy);
      }
      key = KeyOf(origin.info.span);
      for (std::size_t i = 0; i < statements.size(); ++i) {
        statements[i].ordinal = static_cast<int>(i) + 1;
      }
      for (std::size_t c = 0; c < current.size(); ++c) {
        Rib r;
        r.fragment = b.fragments[k] + (current.size() > 1 ? LetterSuffix(c) : "");
        r.src = current[c];
        r.dst = b.end_nodes[k];
        r.statements = statements;
        r.source_key = key;
        ribs.push_back(std::move(r));
      }
      origins.emplace(key, std::move(origin));
    }
    for (const std::string& n : b.end_nodes) {
      if (n != kOutputNodeName) nodes.push_back({n, NodeRole::kInternal});
    }
    current = b.end_nodes;
  }
  nodes.push_back({kOutputNodeName, NodeRole::kOutput});

  RtGraph merged = MergeEquivalentRibs(RtGraph(nodes, ribs, p.inputs, p.output));
  RequireValid(merged);

  SourceMap map;
  for (const Rib& r : merged.ribs()) {
    const Origin& origin = origins.at(r.source_key);
    map.fragments.emplace(r.fragment, origin.info);
    for (const Statement& s : r.statements) {
      map.statements.emplace(std::make_pair(r.fragment, s.ordinal),
                             origin.statement_spans[s.ordinal - 1]);
    }
  }
  return {std::move(merged), std::move(map)};
}

}  // namespace rtgdiag
