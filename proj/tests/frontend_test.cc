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
#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "rtgdiag/error.h"
#include "rtgdiag/frontend.h"
#include "rtgdiag/simulator.h"
#include "rtgdiag/testsynth.h"
#include "test_support.h"

namespace rtgdiag {
namespace {

using ::rtgdiag::testing::Listing31;

std::vector<int> Opcodes(const std::vector<Statement>& statements) {
  std::vector<int> out;
  for (const Statement& s : statements) out.push_back(s.opcode);
  return out;
}

std::multiset<int> OpcodeMultiset(const RtGraph& g, const std::string& fragment) {
  auto ops = Opcodes(*g.FragmentStatements(fragment));
  return {ops.begin(), ops.end()};
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

TEST(ParseTest, Listing31Shape) {
  Program p = ParseProgram(Listing31());
  EXPECT_EQ(p.inputs, std::vector<std::string>{"x"});
  EXPECT_EQ(p.output, "F");
  EXPECT_EQ(p.IfChainCount(), 2u);
  ASSERT_EQ(p.body.size(), 3u);
  ASSERT_TRUE(std::holds_alternative<Assignment>(p.body[2]));
  EXPECT_EQ(std::get<Assignment>(p.body[2]).target, "F");
  const IfChain& f = std::get<IfChain>(p.body[0]);
  ASSERT_EQ(f.arms.size(), 3u);
  ASSERT_TRUE(f.arms[1].guard.has_value());
  EXPECT_EQ(f.arms[1].guard->terms.size(), 2u);
  EXPECT_FALSE(f.arms[2].guard.has_value());
}

TEST(ParseTest, IdentityProgramHasEmptyBody) {
  Program p = ParseProgram("input x; output x;");
  EXPECT_TRUE(p.body.empty());
  EXPECT_EQ(p.output, "x");
}

TEST(ParseTest, UseBeforeAssignIsRejected) {
  EXPECT_EQ(CodeOf([] { ParseProgram("input x; f = y + 1; output f;"); }),
            ErrorCode::kUndefinedVariable);
  EXPECT_EQ(CodeOf([] { ParseProgram("input x; output g;"); }), ErrorCode::kUndefinedVariable);
  // Assigned in some arm counts as defined.
  EXPECT_NO_THROW(ParseProgram("input x; if (x < 1) g = 1; else g = x; output g;"));
}

TEST(ParseTest, SyntaxErrorsCarryPositions) {
  try {
    ParseProgram("input x;\nf = x + ;\ng = (x;\noutput f;");
    FAIL();
  } catch (const SyntaxError& e) {
    ASSERT_GE(e.diagnostics().size(), 2u);  // recovers after the first statement
    EXPECT_EQ(e.diagnostics()[0].line, 2);
    EXPECT_EQ(e.diagnostics()[0].column, 9);
    EXPECT_EQ(e.diagnostics()[1].line, 3);
    EXPECT_EQ(e.code(), ErrorCode::kSyntax);
  }
  EXPECT_THROW(ParseProgram("input x; if (x < 1) f = 1; output f;"), SyntaxError);
  EXPECT_THROW(ParseProgram("input x; f = x $ 2; output f;"), SyntaxError);
  EXPECT_THROW(ParseProgram("input x; f = x"), SyntaxError);
}

TEST(ParseTest, CommentsAndFolding) {
  Program p = ParseProgram("# header\ninput x; # trailing\nf = x * (2/4 + 1); output f;");
  const Assignment& a = std::get<Assignment>(p.body[0]);
  ASSERT_EQ(a.value->kind, Expr::Kind::kBinary);
  ASSERT_TRUE(a.value->rhs->is_number());
  EXPECT_DOUBLE_EQ(a.value->rhs->value, 1.5);

  Program u = ParseProgram("input x; f = x * (2/4 + 1); output f;", {.fold_constants = false});
  EXPECT_FALSE(std::get<Assignment>(u.body[0]).value->rhs->is_number());
}

TEST(LowerTest, SinOfSumUnfoldedAndFolded) {
  Program u = ParseProgram("input x; w = sin(x + PI/3); output w;", {.fold_constants = false});
  TempNames fresh({"x", "w"});
  auto lowered = LowerAssignment(std::get<Assignment>(u.body[0]), fresh);
  EXPECT_EQ(Opcodes(lowered), (std::vector<int>{4, 1, 5}));
  EXPECT_EQ(lowered.back().target, "w");

  Program f = ParseProgram("input x; w = sin(x + PI/3); output w;");
  TempNames fresh2({"x", "w"});
  auto folded = LowerAssignment(std::get<Assignment>(f.body[0]), fresh2);
  EXPECT_EQ(Opcodes(folded), (std::vector<int>{1, 5}));
  EXPECT_NEAR(folded[0].operands[1].value, kPi / 3, 1e-15);
}

TEST(LowerTest, SinOfProductPlusTwo) {
  Program p = ParseProgram("input x; w = sin(PI*x) + 2; output w;");
  TempNames fresh({"x", "w"});
  auto lowered = LowerAssignment(std::get<Assignment>(p.body[0]), fresh);
  EXPECT_EQ(Opcodes(lowered), (std::vector<int>{2, 5, 1}));
  EXPECT_EQ(lowered[0].operands[0], Operand::Var("x"));
  EXPECT_EQ(lowered[0].operands[1], Operand::Const(3.14159));
}

TEST(LowerTest, LiteralLeafProducesNoStatements) {
  TempNames fresh;
  LoweredExpr e = LowerExpression(*Expr::Number(7), fresh);
  EXPECT_TRUE(e.statements.empty());
  EXPECT_EQ(e.result, Operand::Const(7));
}

TEST(LowerTest, NegationAndCopies) {
  Program p = ParseProgram("input x; f = -(x + 1); g = x; output f;");
  TempNames fresh({"x", "f", "g"});
  auto neg = LowerAssignment(std::get<Assignment>(p.body[0]), fresh);
  ASSERT_EQ(Opcodes(neg), (std::vector<int>{1, 2}));
  EXPECT_EQ(neg[1].operands[1], Operand::Const(-1));
  auto copy = LowerAssignment(std::get<Assignment>(p.body[1]), fresh);
  ASSERT_EQ(copy.size(), 1u);
  EXPECT_EQ(copy[0].opcode, op::kAdd);
  EXPECT_EQ(copy[0].operands[1], Operand::Const(0));
}

TEST(LowerTest, FreshNamesAvoidProgramVariables) {
  TempNames fresh({"t1", "t3"});
  EXPECT_EQ(fresh.Next(), "t2");
  EXPECT_EQ(fresh.Next(), "t4");
}

TEST(BuildTest, Listing31UnfoldedMatchesBrackets) {
  BuildResult b = BuildRtg(ParseProgram(Listing31(), {.fold_constants = false}));
  const RtGraph& g = b.graph;
  EXPECT_EQ(g.Fragments(), (std::vector<std::string>{"I1", "I2", "I3", "I4", "I5", "I6"}));
  EXPECT_EQ(OpcodeMultiset(g, "I1"), (std::multiset<int>{1}));
  EXPECT_EQ(OpcodeMultiset(g, "I2"), (std::multiset<int>{2, 3}));
  EXPECT_EQ(OpcodeMultiset(g, "I3"), (std::multiset<int>{2, 1}));
  EXPECT_EQ(OpcodeMultiset(g, "I4"), (std::multiset<int>{1, 4, 5}));
  EXPECT_EQ(OpcodeMultiset(g, "I5"), (std::multiset<int>{1, 2, 5}));
  EXPECT_EQ(OpcodeMultiset(g, "I6"), (std::multiset<int>{1}));

  const auto& i3 = *g.FragmentStatements("I3");
  EXPECT_EQ(i3[0].operands, (std::vector<Operand>{Operand::Var("x"), Operand::Const(-3)}));
  EXPECT_EQ(i3[1].operands[1], Operand::Const(7));
  EXPECT_EQ(i3[1].target, "f");
  EXPECT_TRUE(ValidateGraph(g).empty());
}

TEST(BuildTest, BranchFanOutEqualsArmCount) {
  BuildResult b = BuildRtg(ParseProgram(Listing31()));
  std::map<std::string, int> out_degree;
  for (const Rib& r : b.graph.ribs()) ++out_degree[r.src];
  EXPECT_EQ(out_degree["X"], 3);
  for (const char* node : {"R1", "R2", "R3"}) EXPECT_EQ(out_degree[node], 2) << node;
  EXPECT_EQ(EnumeratePaths(b.graph).size(), 6u);
}

TEST(BuildTest, StraightLineProgramIsOneRib) {
  BuildResult b = BuildRtg(ParseProgram("input x; f = x + 3; output f;"));
  ASSERT_EQ(b.graph.ribs().size(), 1u);
  EXPECT_EQ(b.graph.ribs()[0].src, "X");
  EXPECT_EQ(b.graph.ribs()[0].dst, "Y");
  EXPECT_EQ(Opcodes(b.graph.ribs()[0].statements), std::vector<int>{1});
}

TEST(BuildTest, SourceMapCoversEveryStatement) {
  BuildResult b = BuildRtg(ParseProgram(Listing31(), {.fold_constants = false}));
  for (const Rib& r : b.graph.ribs()) {
    ASSERT_NE(b.source_map.FindFragment(r.fragment), nullptr) << r.fragment;
    for (const Statement& s : r.statements) {
      auto it = b.source_map.statements.find({r.fragment, s.ordinal});
      ASSERT_NE(it, b.source_map.statements.end()) << r.fragment << ":" << s.ordinal;
      EXPECT_GT(it->second.line, 0);
    }
  }
  const FragmentInfo* i2 = b.source_map.FindFragment("I2");
  ASSERT_TRUE(i2->condition.has_value());
  EXPECT_EQ(i2->condition->negated.size(), 1u);
  EXPECT_EQ(i2->span.line, 4);
}

// Runs `g` along the only path whose arm conditions hold for `env`.
std::optional<ObservationTrace> BranchConsistentRun(const BuildResult& b, const Env& env) {
  std::optional<ObservationTrace> out;
  for (const Path& p : EnumeratePaths(b.graph)) {
    bool taken = true;
    for (const ArmCondition& c : PathConditions(p, b.graph, b.source_map)) {
      if (c.guard && !Holds(*c.guard, env)) taken = false;
      for (const Guard& n : c.negated) taken = taken && !Holds(n, env);
    }
    if (!taken) continue;
    EXPECT_FALSE(out.has_value()) << "two paths taken";
    out = ExecutePath(b.graph, p, Stimulus{"", env});
  }
  return out;
}

TEST(BuildTest, ProgramAndGraphAgreeOnRandomInputs) {
  for (bool fold : {true, false}) {
    Program p = ParseProgram(Listing31(), {.fold_constants = fold});
    BuildResult b = BuildRtg(p);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-20, 20);
    for (int i = 0; i < 200; ++i) {
      Env env{{"x", dist(rng)}};
      ObservationTrace direct = ExecuteProgram(p, Stimulus{"", env});
      auto lowered = BranchConsistentRun(b, env);
      ASSERT_TRUE(lowered.has_value());
      EXPECT_NEAR(direct.output, lowered->output, 1e-9 * std::max(1.0, std::abs(direct.output)));
      for (const Observation& o : lowered->points) {
        const Observation* d = direct.Find(o.node);
        ASSERT_NE(d, nullptr) << o.node;
        EXPECT_NEAR(d->value, o.value, 1e-9 * std::max(1.0, std::abs(o.value)));
      }
    }
  }
}

TEST(ExecuteProgramTest, Listing31AtOne) {
  ObservationTrace t = ExecuteProgram(ParseProgram(Listing31()), Stimulus{"", {{"x", 1.0}}});
  // Hand evaluation: x < 2 gives f = 4, x < 2.0944 gives w = sin(1 + 3.14159/3).
  const double expected = (1.0 + 3.0) + std::sin(1.0 + 3.14159 / 3.0);
  EXPECT_NEAR(t.output, expected, 1e-12);
  EXPECT_EQ(t.Find("R1")->value, 4.0);
}

}  // namespace
}  // namespace rtgdiag
