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

#ifndef RTGDIAG_SIMULATOR_H_
#define RTGDIAG_SIMULATOR_H_

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtgdiag/fdt.h"
#include "rtgdiag/frontend.h"
#include "rtgdiag/rtg.h"
#include "rtgdiag/testsynth.h"

namespace rtgdiag {

using Env = std::map<std::string, double>;

struct Stimulus {
  std::string label;
  Env env;
};

struct Observation {
  std::string node;
  std::string variable;
  double value = 0.0;
};

struct ObservationTrace {
  std::vector<Observation> points;  // in execution order, input .. output
  double output = 0.0;
  std::vector<std::string> warnings;

  const Observation* Find(const std::string& node) const;
};

// Big-step evaluation of the program in double precision. Observation points
// are the input node, the end node of every block (see PlanBlocks) and the
// output node. Throws kUnboundVariable or kDivisionByZero.
ObservationTrace ExecuteProgram(const Program& p, const Stimulus& s);

struct ExecOptions {
  // Free variables missing from the stimulus default to 0.0 with a warning
  // instead of raising kUnboundVariable.
  bool permissive = false;
};

// Runs every statement of every rib along the path. Each internal node
// observes the last value its incoming rib assigned; the output node
// observes the graph's output variable when declared.
ObservationTrace ExecutePath(const RtGraph& g, const Path& p, const Stimulus& s,
                             const ExecOptions& options = {});

// Variables read on the path before any assignment on it.
std::vector<std::string> FreeVariables(const RtGraph& g, const Path& p);

struct FaultSpec {
  enum class Kind { kOpcode, kConstant };

  std::string fragment;
  int ordinal = 0;
  Kind kind = Kind::kOpcode;
  int new_opcode = 0;
  double new_constant = 0.0;
  // Constant operand to replace; defaults to the first constant operand.
  std::optional<int> operand;

  // "I5:3:op=3" or "I5:3:const=2.5".
  static FaultSpec Parse(const std::string& text);
  std::string ToString() const;
};

// Mutant graph differing from `g` in exactly one statement (on every rib that
// carries the fragment). Throws kNoSuchStatement, kArityMismatch or
// kNoOpMutation.
RtGraph InjectFault(const RtGraph& g, const FaultSpec& f);

// Opcode substitutions 1<->3 and 2<->4 plus +1 perturbation of the first
// constant operand, for every statement of `g`.
std::vector<FaultSpec> MutationCatalogue(const RtGraph& g);

struct RunOptions {
  double tolerance = 1e-9;
  bool permissive = false;
};

// Bit i is 1 iff |golden - mutant| > tolerance * max(1, |golden|) at the
// output node for term i's path under term i's stimulus. Errors are
// rethrown with the term label prepended.
ResponseVector RunSuite(const RtGraph& golden, const RtGraph& mutant, const TestSuite& suite,
                        const std::map<std::string, Stimulus>& stimuli,
                        const RunOptions& options = {});

// Closed/open interval on the real line; infinite ends are open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  bool Empty() const;
  bool Contains(double x) const;
};

// Finite union of disjoint intervals in ascending order.
class IntervalSet {
 public:
  static IntervalSet All();
  static IntervalSet None() { return IntervalSet(); }
  static IntervalSet Of(Interval i);

  IntervalSet Intersect(const IntervalSet& other) const;
  IntervalSet Complement() const;
  bool Empty() const { return parts_.empty(); }
  bool Contains(double x) const;
  const std::vector<Interval>& parts() const { return parts_; }

  // Midpoint of the lowest part; an unbounded side is replaced by the finite
  // bound -/+ 1, and the whole line yields 1.0.
  double Pick() const;

 private:
  std::vector<Interval> parts_;
};

// Default binding of an input when no guard constrains it.
inline constexpr double kDefaultInputValue = 1.0;

// Guard conjunction along a path, gathered from the source map.
std::vector<ArmCondition> PathConditions(const Path& p, const RtGraph& g,
                                         const SourceMap& map);

// Chooses a stimulus for the path. With guards, every input constrained by
// single-variable comparisons against constants gets the Pick() of its
// feasible set; other inputs get 1.0 and free variables 0.0. Throws
// kInfeasiblePath when the guard conjunction is unsatisfiable.
Stimulus PickStimulus(const RtGraph& g, const Path& p, const SourceMap* map = nullptr);

// Stimuli file: {"<term label>": {"x": 1.0, ...}, ...}.
std::map<std::string, Stimulus> StimuliFromJson(const nlohmann::json& j);
nlohmann::json StimuliToJson(const std::map<std::string, Stimulus>& stimuli);

// One stimulus per term, chosen per path with PickStimulus. Terms on
// infeasible paths are left out and their path labels reported.
struct StimulusPlan {
  std::map<std::string, Stimulus> stimuli;
  std::vector<std::string> infeasible_paths;
};
StimulusPlan PlanStimuli(const RtGraph& g, const TestSuite& suite,
                         const SourceMap* map = nullptr);

// Evaluates a constant-only expression; nullopt if it reads a variable.
std::optional<double> ConstantValue(const Expr& e);
double Evaluate(const Expr& e, const Env& env);
bool Holds(const Guard& g, const Env& env);

}  // namespace rtgdiag

#endif  // RTGDIAG_SIMULATOR_H_
