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

#ifndef RTGDIAG_RTG_H_
#define RTGDIAG_RTG_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtgdiag {

// Operation alphabet. Codes are the digits used in test-term labels.
struct OpCode {
  int code = 0;
  std::string name;
  int arity = 0;
};

namespace op {
inline constexpr int kAdd = 1;
inline constexpr int kMul = 2;
inline constexpr int kSub = 3;
inline constexpr int kDiv = 4;
inline constexpr int kSin = 5;
}  // namespace op

class OpAlphabet {
 public:
  // {1: summation, 2: multiplication, 3: subtraction, 4: division, 5: sine}.
  static const OpAlphabet& Builtin();

  // Throws kFormat if the code is already registered or the arity is not 1/2.
  void Register(OpCode op);
  const OpCode* Find(int code) const;
  const std::vector<OpCode>& ops() const { return ops_; }

 private:
  std::vector<OpCode> ops_;
};

struct Operand {
  enum class Kind { kVariable, kConstant };

  static Operand Var(std::string name) {
    return Operand{Kind::kVariable, std::move(name), 0.0};
  }
  static Operand Const(double value) { return Operand{Kind::kConstant, {}, value}; }

  bool is_variable() const { return kind == Kind::kVariable; }
  std::string ToString() const;

  friend bool operator==(const Operand&, const Operand&) = default;

  Kind kind = Kind::kConstant;
  std::string name;
  double value = 0.0;
};

// One three-address statement `target := op(operands...)`.
struct Statement {
  int ordinal = 0;  // 1-based position within the rib
  int opcode = 0;
  std::string target;
  std::vector<Operand> operands;

  std::string ToString() const;
  friend bool operator==(const Statement&, const Statement&) = default;
};

// Identity of a statement across the graph. Ordering and equality use
// (fragment, opcode, ordinal); `show_ordinal` only affects the display form,
// which is I_{j,k} (e.g. "I51") with a ".ordinal" suffix when two statements
// of the fragment share an opcode.
struct StatementId {
  std::string fragment;
  int opcode = 0;
  int ordinal = 0;
  bool show_ordinal = false;

  std::string Label() const;

  friend bool operator==(const StatementId& a, const StatementId& b) {
    return a.fragment == b.fragment && a.opcode == b.opcode &&
           a.ordinal == b.ordinal;
  }
  friend std::strong_ordering operator<=>(const StatementId& a,
                                          const StatementId& b);
};

// Natural ordering of identifiers: digit runs compare numerically, so
// "I2" < "I10".
int NaturalCompare(std::string_view a, std::string_view b);

enum class NodeRole { kInput, kInternal, kOutput };

std::string_view NodeRoleName(NodeRole role);

struct Node {
  std::string name;
  NodeRole role = NodeRole::kInternal;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Rib {
  std::string fragment;
  std::string src;
  std::string dst;
  std::vector<Statement> statements;
  // Source location key shared by copies of one source fragment; empty when
  // the rib does not come from a program.
  std::string source_key;

  friend bool operator==(const Rib&, const Rib&) = default;
};

// Register-transfer graph: nodes are observation points, ribs carry
// statement sequences. Plain value type; use ValidateGraph to check it.
class RtGraph {
 public:
  RtGraph() = default;
  RtGraph(std::vector<Node> nodes, std::vector<Rib> ribs,
          std::vector<std::string> inputs = {}, std::string output = {});

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Rib>& ribs() const { return ribs_; }
  // Declared input variables and output variable (may be empty).
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::string& output() const { return output_; }

  const Node* FindNode(std::string_view name) const;
  std::optional<std::string> InputNode() const;
  std::optional<std::string> OutputNode() const;

  // Distinct fragments in column order: topological depth of their ribs'
  // sources, then natural order of the identifier.
  std::vector<std::string> Fragments() const;
  // Statements of the first rib carrying `fragment`; empty if absent.
  const std::vector<Statement>* FragmentStatements(std::string_view fragment) const;

  StatementId IdOf(const std::string& fragment, const Statement& statement) const;
  // All statement identifiers in fault-detection-table column order.
  std::vector<StatementId> StatementIds() const;
  std::vector<StatementId> RibStatementIds(std::size_t rib_index) const;

  // Variables named anywhere in the graph (targets and operands).
  std::vector<std::string> Variables() const;

  friend bool operator==(const RtGraph&, const RtGraph&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<Rib> ribs_;
  std::vector<std::string> inputs_;
  std::string output_;
};

struct Violation {
  std::string code;
  std::string message;
};

// Every invariant violation of `g`; empty means valid. Codes:
// no-input-node, multiple-input-nodes, no-output-reachable,
// multiple-output-nodes, duplicate-node, unknown-node, cycle-detected,
// dangling-node, empty-rib, bad-ordinal, unknown-opcode, bad-arity,
// inconsistent-fragment.
std::vector<Violation> ValidateGraph(const RtGraph& g);

// Throws kInvalidGraph listing all violations, if any.
void RequireValid(const RtGraph& g);

// Gives one fragment identifier to ribs that share a source key, a
// destination and an identical statement sequence (e.g. I6A..I6D -> I6).
// Throws kMergeConflict if two ribs already share a fragment identifier but
// differ in statements.
RtGraph MergeEquivalentRibs(const RtGraph& g);

}  // namespace rtgdiag

#endif  // RTGDIAG_RTG_H_
