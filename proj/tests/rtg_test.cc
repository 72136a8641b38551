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
#include <random>

#include <gtest/gtest.h>

#include "rtgdiag/error.h"
#include "rtgdiag/rtg.h"
#include "rtgdiag/rtg_json.h"
#include "rtgdiag/testsynth.h"
#include "test_support.h"

namespace rtgdiag {
namespace {

using ::rtgdiag::testing::Fig1;
using ::rtgdiag::testing::FixturePath;

std::vector<std::string> Codes(const RtGraph& g) {
  std::vector<std::string> out;
  for (const Violation& v : ValidateGraph(g)) out.push_back(v.code);
  return out;
}

bool HasCode(const RtGraph& g, const std::string& code) {
  auto codes = Codes(g);
  return std::find(codes.begin(), codes.end(), code) != codes.end();
}

Statement Add(int ordinal, const std::string& target, const std::string& var, double c) {
  return Statement{ordinal, op::kAdd, target, {Operand::Var(var), Operand::Const(c)}};
}

RtGraph WithRibs(const RtGraph& base, std::vector<Rib> ribs) {
  return RtGraph(base.nodes(), std::move(ribs), base.inputs(), base.output());
}

TEST(OpAlphabetTest, BuiltinIsTheFiveOperations) {
  const auto& ops = OpAlphabet::Builtin().ops();
  ASSERT_EQ(ops.size(), 5u);
  for (int code = 1; code <= 5; ++code) {
    const OpCode* op = OpAlphabet::Builtin().Find(code);
    ASSERT_NE(op, nullptr);
    EXPECT_EQ(op->arity, code == op::kSin ? 1 : 2);
  }
  EXPECT_EQ(OpAlphabet::Builtin().Find(6), nullptr);
}

TEST(OpAlphabetTest, RegisterRejectsDuplicatesAndBadArity) {
  OpAlphabet a = OpAlphabet::Builtin();
  a.Register({6, "cos", 1});
  EXPECT_NE(a.Find(6), nullptr);
  EXPECT_THROW(a.Register({6, "tan", 1}), Error);
  EXPECT_THROW(a.Register({7, "fma", 3}), Error);
}

TEST(StatementIdTest, LabelsAndOrdering) {
  EXPECT_EQ((StatementId{"I5", 1, 3, false}).Label(), "I51");
  EXPECT_EQ((StatementId{"I2", 1, 2, true}).Label(), "I21.2");
  EXPECT_LT((StatementId{"I2", 5, 1, false}), (StatementId{"I10", 1, 1, false}));
  EXPECT_LT((StatementId{"I4", 1, 2, false}), (StatementId{"I4", 4, 1, false}));
  EXPECT_LT(NaturalCompare("I9", "I10"), 0);
}

TEST(StatementIdTest, OrdinalShownOnlyForSharedOpcodes) {
  RtGraph base = Fig1();
  std::vector<Rib> ribs = base.ribs();
  ribs[0].statements = {Add(1, "t", "x", 1), Add(2, "f", "t", 2)};
  RtGraph g = WithRibs(base, ribs);
  std::vector<std::string> labels;
  for (const StatementId& id : g.StatementIds()) labels.push_back(id.Label());
  EXPECT_EQ(labels.front(), "I11.1");
  EXPECT_EQ(labels[1], "I11.2");
  EXPECT_NE(std::find(labels.begin(), labels.end(), "I51"), labels.end());
}

TEST(ValidateGraphTest, Fig1IsValid) {
  EXPECT_TRUE(ValidateGraph(Fig1()).empty());
  std::vector<std::string> labels;
  for (const StatementId& id : Fig1().StatementIds()) labels.push_back(id.Label());
  EXPECT_EQ(labels, (std::vector<std::string>{"I11", "I22", "I23", "I31", "I32", "I41", "I44",
                                              "I45", "I51", "I52", "I55", "I61"}));
}

TEST(ValidateGraphTest, LoneInputNodeHasNoReachableOutput) {
  RtGraph g({{"X", NodeRole::kInput}}, {});
  EXPECT_TRUE(HasCode(g, "no-output-reachable"));
}

TEST(ValidateGraphTest, CycleIsReported) {
  RtGraph base = Fig1();
  std::vector<Rib> ribs = base.ribs();
  Rib back = ribs[3];  // I4, R1 -> R4
  back.src = "R4";
  back.dst = "R1";
  ribs.push_back(back);
  EXPECT_TRUE(HasCode(WithRibs(base, ribs), "cycle-detected"));
}

TEST(ValidateGraphTest, StructuralViolations) {
  RtGraph base = Fig1();

  std::vector<Rib> empty = base.ribs();
  empty[0].statements.clear();
  EXPECT_TRUE(HasCode(WithRibs(base, empty), "empty-rib"));

  std::vector<Rib> inconsistent = base.ribs();
  inconsistent.back().statements[0].opcode = op::kSub;
  EXPECT_TRUE(HasCode(WithRibs(base, inconsistent), "inconsistent-fragment"));

  std::vector<Rib> arity = base.ribs();
  arity[0].statements[0].operands.pop_back();
  EXPECT_TRUE(HasCode(WithRibs(base, arity), "bad-arity"));

  std::vector<Rib> unknown = base.ribs();
  unknown[0].statements[0].opcode = 9;
  EXPECT_TRUE(HasCode(WithRibs(base, unknown), "unknown-opcode"));

  std::vector<Rib> ordinal = base.ribs();
  ordinal[1].statements[1].ordinal = 5;
  EXPECT_TRUE(HasCode(WithRibs(base, ordinal), "bad-ordinal"));

  std::vector<Node> nodes = base.nodes();
  nodes.push_back({"R9", NodeRole::kInternal});
  EXPECT_TRUE(HasCode(RtGraph(nodes, base.ribs()), "dangling-node"));

  std::vector<Rib> stray = base.ribs();
  stray[0].dst = "R42";
  EXPECT_TRUE(HasCode(WithRibs(base, stray), "unknown-node"));

  EXPECT_THROW(RequireValid(WithRibs(base, empty)), Error);
}

TEST(MergeTest, FourCopiesOfI6BecomeOneFragment) {
  RtGraph unmerged = LoadGraph(FixturePath("fig1_unmerged.rtg.json"));
  RtGraph merged = MergeEquivalentRibs(unmerged);
  int i6 = 0;
  for (const Rib& r : merged.ribs()) i6 += r.fragment == "I6";
  EXPECT_EQ(i6, 4);
  EXPECT_EQ(merged.Fragments(), Fig1().Fragments());
  EXPECT_TRUE(ValidateGraph(merged).empty());
}

TEST(MergeTest, NoDuplicatesIsIdentity) {
  RtGraph g = Fig1();
  EXPECT_EQ(MergeEquivalentRibs(g), g);
}

TEST(MergeTest, DifferentStatementsWithoutSharedKeyStayApart) {
  RtGraph base = Fig1();
  std::vector<Rib> ribs = base.ribs();
  ribs.push_back({"I7", "R2", "Y", {Add(1, "F", "f", 1)}, ""});
  RtGraph g = WithRibs(base, ribs);
  EXPECT_EQ(MergeEquivalentRibs(g), g);
}

TEST(MergeTest, SharedIdWithDifferentStatementsConflicts) {
  RtGraph base = Fig1();
  std::vector<Rib> ribs = base.ribs();
  ribs.back().statements[0].operands[1] = Operand::Var("f");
  try {
    MergeEquivalentRibs(WithRibs(base, ribs));
    FAIL() << "expected MergeConflict";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMergeConflict);
  }
}

// Path label plus the statements executed along it.
std::multiset<std::string> PathSemantics(const RtGraph& g) {
  std::multiset<std::string> out;
  for (const Path& p : EnumeratePaths(g)) {
    std::string s = p.label + ":";
    for (std::size_t r : p.ribs) {
      for (const Statement& st : g.ribs()[r].statements) s += st.ToString() + ";";
    }
    out.insert(s);
  }
  return out;
}

TEST(MergeTest, IdempotentAndSemanticsPreserving) {
  RtGraph unmerged = LoadGraph(FixturePath("fig1_unmerged.rtg.json"));
  RtGraph once = MergeEquivalentRibs(unmerged);
  EXPECT_EQ(MergeEquivalentRibs(once), once);
  EXPECT_EQ(PathSemantics(once), PathSemantics(unmerged));

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    RtGraph g = testing::RandomDagModel(rng);
    RtGraph m = MergeEquivalentRibs(g);
    EXPECT_EQ(MergeEquivalentRibs(m), m);
    EXPECT_EQ(PathSemantics(m), PathSemantics(g));
  }
}

TEST(GraphJsonTest, RoundTrip) {
  RtGraph g = LoadGraph(FixturePath("fig1_unmerged.rtg.json"));
  EXPECT_EQ(GraphFromJson(GraphToJson(g)), g);
}

TEST(GraphJsonTest, Errors) {
  try {
    LoadGraph(FixturePath("missing.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  EXPECT_THROW(GraphFromJson(nlohmann::json{{"nodes", 3}}), Error);
  EXPECT_THROW(ParseJsonText("{", "inline"), Error);
}

}  // namespace
}  // namespace rtgdiag
