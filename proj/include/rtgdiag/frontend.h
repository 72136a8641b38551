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

#ifndef RTGDIAG_FRONTEND_H_
#define RTGDIAG_FRONTEND_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rtgdiag/error.h"
#include "rtgdiag/rtg.h"

namespace rtgdiag {

// Value of the predefined constant PI, as written in the reference program.
inline constexpr double kPi = 3.14159;

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct SourceSpan {
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;

  std::string ToString() const;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { kNumber, kVariable, kBinary, kNegate, kSin };

  Kind kind = Kind::kNumber;
  double value = 0.0;  // kNumber
  std::string name;    // kVariable; "PI" on a kNumber built from the constant
  char op = 0;         // kBinary: one of + - * /
  ExprPtr lhs;         // operand of kNegate / kSin, left side of kBinary
  ExprPtr rhs;
  SourcePos pos;

  static ExprPtr Number(double v, SourcePos pos = {}, std::string name = {});
  static ExprPtr Variable(std::string name, SourcePos pos = {});
  static ExprPtr Binary(char op, ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
  static ExprPtr Negate(ExprPtr operand, SourcePos pos = {});
  static ExprPtr Sin(ExprPtr operand, SourcePos pos = {});

  bool is_number() const { return kind == Kind::kNumber; }
  std::string ToString() const;
};

enum class RelOp { kLt, kLe, kGt, kGe };

std::string_view RelOpText(RelOp op);

struct Comparison {
  ExprPtr lhs;
  RelOp op = RelOp::kLt;
  ExprPtr rhs;
};

// Conjunction of comparisons.
struct Guard {
  std::vector<Comparison> terms;

  std::string ToString() const;
};

struct Assignment {
  std::string target;
  ExprPtr value;
  SourceSpan span;
};

struct IfArm {
  std::optional<Guard> guard;  // nullopt for the final else
  std::vector<Assignment> body;
  SourceSpan span;
};

struct IfChain {
  std::vector<IfArm> arms;
};

using BodyItem = std::variant<Assignment, IfChain>;

struct Program {
  std::vector<std::string> inputs;
  std::vector<BodyItem> body;
  std::string output;

  std::size_t IfChainCount() const;
  std::string ToString() const;
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

// Raised with code kSyntax; carries every diagnostic collected by the parser.
class SyntaxError : public Error {
 public:
  explicit SyntaxError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ParseOptions {
  // Fold constant subexpressions such as 2/3*PI. Guards are always folded.
  bool fold_constants = true;
};

// Parses the mini-language:
//   input x;  f = 2*x - 3;  if (x < 2) f = x + 3; else if (...) {...} else ...;
//   output F;
// Throws SyntaxError or kUndefinedVariable.
Program ParseProgram(const std::string& text, const ParseOptions& options = {});

ExprPtr FoldConstants(const ExprPtr& e);

// Fresh temporary names that avoid every name in `reserved`.
class TempNames {
 public:
  explicit TempNames(std::set<std::string> reserved = {})
      : reserved_(std::move(reserved)) {}
  std::string Next();

 private:
  std::set<std::string> reserved_;
  int next_ = 1;
};

struct LoweredExpr {
  std::vector<Statement> statements;  // ordinals left at 0
  Operand result;
};

// Post-order lowering to three-address statements over the built-in
// alphabet. Unary minus on a non-literal becomes multiplication by -1; a
// constant operand on the left of + or * is moved to the right. When
// `target` is given the last statement assigns it. Throws
// kUnsupportedOperation for anything outside the alphabet.
LoweredExpr LowerExpression(const Expr& e, TempNames& fresh,
                            const std::optional<std::string>& target = std::nullopt);

// An assignment as statements; a bare copy `f = x` becomes `f := x + 0`.
std::vector<Statement> LowerAssignment(const Assignment& a, TempNames& fresh);

// Guard of one if-chain arm: its own condition and the negations of the
// conditions of all earlier arms.
struct ArmCondition {
  std::optional<Guard> guard;
  std::vector<Guard> negated;
};

struct FragmentInfo {
  SourceSpan span;
  std::optional<ArmCondition> condition;
};

struct SourceMap {
  std::map<std::string, FragmentInfo> fragments;
  // (fragment, ordinal) -> location of the source assignment.
  std::map<std::pair<std::string, int>, SourceSpan> statements;

  const FragmentInfo* FindFragment(const std::string& fragment) const;
};

// Straight-line run or if-chain of the program body, with the graph node at
// which each arm (or the run) ends. Shared by graph building and program
// execution so that both name observation points identically.
struct Block {
  std::vector<const Assignment*> straight;
  const IfChain* chain = nullptr;
  std::vector<std::string> end_nodes;
  std::vector<std::string> fragments;  // fragment id per arm (or the run)
};

std::vector<Block> PlanBlocks(const Program& p);

inline constexpr const char* kInputNodeName = "X";
inline constexpr const char* kOutputNodeName = "Y";

struct BuildResult {
  RtGraph graph;
  SourceMap source_map;
};

// Lowers `p` to a register-transfer graph: each arm of an if-chain becomes a
// rib from every current node to one fresh node per arm, each straight run a
// rib to one fresh node, and the last block ends at the output node. Copies
// of a source fragment are then merged.
BuildResult BuildRtg(const Program& p);

}  // namespace rtgdiag

#endif  // RTGDIAG_FRONTEND_H_
