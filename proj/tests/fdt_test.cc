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

#include <gtest/gtest.h>

#include "rtgdiag/error.h"
#include "rtgdiag/fdt.h"
#include "rtgdiag/testsynth.h"
#include "test_support.h"

namespace rtgdiag {
namespace {

using ::rtgdiag::testing::Fig1;

std::set<std::string> MarkLabels(const FdtRow& row) {
  std::set<std::string> out;
  for (const StatementId& id : row.marks) out.insert(id.Label());
  return out;
}

// The extended table as printed in the paper, one string of column marks per
// row over I11 I22 I23 I31 I32 I41 I44 I45 I51 I52 I55 I61.
const std::vector<std::pair<std::string, std::string>> kPaperExtended = {
    {"111₁", "100001000001"}, {"141₁", "100000100001"}, {"151₁", "100000010001"},
    {"111₂", "100000001001"}, {"121₁", "100000000101"}, {"151₂", "100000000011"},
    {"21₁", "010000000001"},  {"31", "001000000001"},   {"11", "000100000001"},
    {"21₂", "000010000001"},
};

TEST(GeneralizedFdtTest, Fig1Rows) {
  RtGraph g = Fig1();
  FaultDetectionTable t = BuildGeneralizedFdt(g, EnumeratePaths(g));
  EXPECT_EQ(t.kind, TableKind::kGeneralized);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].label, "X14Y");
  EXPECT_EQ(MarkLabels(t.rows[0]), (std::set<std::string>{"I11", "I41", "I44", "I45", "I61"}));
  EXPECT_EQ(MarkLabels(t.rows[2]), (std::set<std::string>{"I22", "I23", "I61"}));
}

TEST(ExtendedFdtTest, Fig1MatchesPaperCellForCell) {
  RtGraph g = Fig1();
  FaultDetectionTable t = BuildExtendedFdt(g, BuildCompleteTest(g, EnumeratePaths(g)));
  ASSERT_EQ(t.rows.size(), kPaperExtended.size());
  ASSERT_EQ(t.columns.size(), 12u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_EQ(t.rows[r].label, kPaperExtended[r].first);
    std::string cells;
    for (const StatementId& c : t.columns) cells += t.rows[r].marks.count(c) ? '1' : '0';
    EXPECT_EQ(cells, kPaperExtended[r].second) << t.rows[r].label;
  }
}

TEST(ExtendedFdtTest, OneRibTermHasSingleMark) {
  Statement s{1, op::kAdd, "a", {Operand::Var("a"), Operand::Const(1.5)}};
  RtGraph g({{"X", NodeRole::kInput}, {"Y", NodeRole::kOutput}}, {{"I1", "X", "Y", {s}, ""}},
            {"a"}, "a");
  auto paths = EnumeratePaths(g);
  EXPECT_EQ(BuildExtendedFdt(g, BuildCompleteTest(g, paths)).rows[0].marks.size(), 1u);
  EXPECT_EQ(BuildGeneralizedFdt(g, paths).rows[0].marks.size(), 1u);
}

TEST(FdtPropertyTest, TermRowsNestInPathRowsAndCoverColumns) {
  std::mt19937 rng(29);
  for (int i = 0; i < 100; ++i) {
    RtGraph g = testing::RandomDagModel(rng);
    auto paths = EnumeratePaths(g);
    FaultDetectionTable gen = BuildGeneralizedFdt(g, paths);
    FaultDetectionTable ext = BuildExtendedFdt(g, BuildCompleteTest(g, paths));
    std::set<StatementId> all;
    for (const FdtRow& row : ext.rows) {
      auto it = std::find_if(gen.rows.begin(), gen.rows.end(),
                             [&](const FdtRow& r) { return r.label == row.path; });
      ASSERT_NE(it, gen.rows.end());
      EXPECT_TRUE(std::includes(it->marks.begin(), it->marks.end(), row.marks.begin(),
                                row.marks.end()));
      all.insert(row.marks.begin(), row.marks.end());
    }
    EXPECT_EQ(all, std::set<StatementId>(ext.columns.begin(), ext.columns.end()));
    for (const FdtRow& row : gen.rows) {
      for (const StatementId& m : row.marks) {
        EXPECT_NE(std::find(gen.columns.begin(), gen.columns.end(), m), gen.columns.end());
      }
    }
    FaultDetectionTable bound = AttachResponse(ext, ResponseVector{std::vector<int>(ext.rows.size(), 1)});
    EXPECT_EQ(TableFromJson(TableToJson(bound)), bound);
    EXPECT_EQ(TableFromJson(TableToJson(gen)), gen);
  }
}

TEST(AttachResponseTest, BindsAndChecksLength) {
  RtGraph g = Fig1();
  auto paths = EnumeratePaths(g);
  FaultDetectionTable ext = BuildExtendedFdt(g, BuildCompleteTest(g, paths));
  FaultDetectionTable bound = AttachResponse(ext, ResponseVector::Parse("0001110000"));
  ASSERT_TRUE(bound.response.has_value());
  EXPECT_EQ(bound.response->ToString(), "(0,0,0,1,1,1,0,0,0,0)");
  EXPECT_FALSE(ext.response.has_value());  // original untouched

  FaultDetectionTable gen = AttachResponse(BuildGeneralizedFdt(g, paths),
                                           ResponseVector::Parse("(0,1,0,0)"));
  EXPECT_EQ(gen.response->bits, (std::vector<int>{0, 1, 0, 0}));

  try {
    AttachResponse(gen, ResponseVector::Parse("010"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(ResponseVectorTest, ParseForms) {
  EXPECT_EQ(ResponseVector::Parse("0,1,0,0").bits, (std::vector<int>{0, 1, 0, 0}));
  EXPECT_EQ(ResponseVector::Parse("(0100)").bits, (std::vector<int>{0, 1, 0, 0}));
  EXPECT_TRUE(ResponseVector::Parse("000").AllZero());
  EXPECT_THROW(ResponseVector::Parse("012"), Error);
}

TEST(RenderTest, TextLayout) {
  RtGraph g = Fig1();
  FaultDetectionTable t = AttachResponse(BuildExtendedFdt(g, BuildCompleteTest(g, EnumeratePaths(g))),
                                         ResponseVector::Parse("0001110000"));
  std::string text = RenderTable(t);
  std::istringstream lines(text);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header.rfind("T_i\\I_j", 0), 0u);
  EXPECT_NE(header.find("I11"), std::string::npos);
  EXPECT_EQ(header.substr(header.size() - 1), "V");
  EXPECT_EQ(first.rfind("111₁", 0), 0u);
  // Every line has the same display width.
  std::istringstream again(text);
  std::string line;
  std::size_t width = DisplayWidth(header);
  while (std::getline(again, line)) {
    EXPECT_LE(DisplayWidth(line), width);
  }

  std::set<StatementId> faults{{"I5", 1, 3, false}};
  EXPECT_NE(RenderTable(t, &faults).find("Faults"), std::string::npos);
  EXPECT_EQ(DisplayWidth("151₂"), 4u);
}

}  // namespace
}  // namespace rtgdiag
