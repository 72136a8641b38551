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

#include "rtgdiag/cli.h"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtgdiag/caps.h"
#include "rtgdiag/diagnosis.h"
#include "rtgdiag/error.h"
#include "rtgdiag/fdt.h"
#include "rtgdiag/frontend.h"
#include "rtgdiag/rtg.h"
#include "rtgdiag/rtg_json.h"
#include "rtgdiag/set_cover.h"
#include "rtgdiag/simulator.h"
#include "rtgdiag/testability.h"
#include "rtgdiag/testsynth.h"

namespace rtgdiag {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string program;
  std::string graph;
  bool unfolded = false;
};

struct Model {
  RtGraph graph;
  std::optional<SourceMap> map;
  std::optional<Program> program;
};

void AddInput(CLI::App* sub, Input& in, bool graph_allowed = true) {
  auto* p = sub->add_option("--program", in.program, "mini-language source (.swl)");
  if (graph_allowed) {
    auto* g = sub->add_option("--graph", in.graph, "register-transfer graph (JSON)");
    p->excludes(g);
  }
  sub->add_flag("--unfolded", in.unfolded, "keep constant subexpressions as statements");
}

Program LoadProgram(const Input& in) {
  ParseOptions options;
  options.fold_constants = !in.unfolded;
  return ParseProgram(ReadFile(in.program), options);
}

Model LoadModel(const Input& in) {
  if (in.program.empty() && in.graph.empty()) {
    throw UsageError("one of --program or --graph is required");
  }
  Model m;
  if (!in.program.empty()) {
    m.program = LoadProgram(in);
    BuildResult built = BuildRtg(*m.program);
    m.graph = std::move(built.graph);
    m.map = std::move(built.source_map);
  } else {
    m.graph = MergeEquivalentRibs(LoadGraph(in.graph));
    RequireValid(m.graph);
  }
  return m;
}

const SourceMap* MapOf(const Model& m) { return m.map ? &*m.map : nullptr; }

std::string FormatNumber(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string Join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::vector<std::string> Labels(const std::vector<StatementId>& ids) {
  std::vector<std::string> out;
  for (const StatementId& id : ids) out.push_back(id.Label());
  return out;
}

std::string PathFormula(const std::vector<Path>& paths) {
  std::vector<std::string> labels;
  for (const Path& p : paths) labels.push_back(p.label);
  return "P = " + Join(labels, " ∨ ");
}

std::string GroupsText(const std::vector<AmbiguityGroup>& groups) {
  std::vector<std::string> parts;
  for (const AmbiguityGroup& g : groups) parts.push_back(g.ToString());
  return Join(parts, " ");
}

json GroupsJson(const std::vector<AmbiguityGroup>& groups) {
  json out = json::array();
  for (const AmbiguityGroup& g : groups) {
    json members = json::array();
    for (const StatementId& id : g.members) members.push_back(id.Label());
    out.push_back(members);
  }
  return out;
}

json DnfJson(const CandidateDnf& f) {
  json out = json::array();
  for (const Conjunction& c : f.terms) {
    json term = json::array();
    for (const StatementId& id : c) term.push_back(id.Label());
    out.push_back(term);
  }
  return out;
}

json TermJson(const TestTerm& t) {
  return json{{"label", t.label},
              {"digits", t.digits},
              {"occurrence", t.occurrence},
              {"path", t.path.label},
              {"selection", Labels(t.selection)}};
}

CoverMode ParseCoverMode(const std::string& text) {
  if (text == "auto") return CoverMode::kAuto;
  if (text == "exact") return CoverMode::kExact;
  return CoverMode::kGreedy;
}

TestSuite SelectSuite(const RtGraph& g, const std::vector<Path>& paths,
                      const std::string& which, const Caps& caps) {
  TestSuite complete = BuildCompleteTest(g, paths, caps);
  if (which == "minimal") {
    return RestrictToPaths(complete, MinimalPathCover(g, paths, CoverMode::kAuto, caps).paths);
  }
  if (which == "diagnostic") {
    return MinimalDiagnosticTest(g, complete, CoverMode::kAuto, caps).suite;
  }
  return complete;
}

// Suite trimmed to the terms that have a stimulus, plus the stimuli.
struct Prepared {
  TestSuite suite;
  std::map<std::string, Stimulus> stimuli;
  std::vector<std::string> infeasible_paths;
};

Prepared PrepareRun(const Model& m, const TestSuite& suite, const std::string& stimuli_file) {
  StimulusPlan plan = PlanStimuli(m.graph, suite, MapOf(m));
  Prepared out;
  out.stimuli = std::move(plan.stimuli);
  if (!stimuli_file.empty()) {
    auto given = StimuliFromJson(ParseJsonText(ReadFile(stimuli_file), stimuli_file));
    for (auto& [label, s] : given) {
      Stimulus& slot = out.stimuli[label];
      slot.label = label;
      for (const auto& [var, value] : s.env) slot.env[var] = value;
    }
  }
  std::set<std::string> dropped;
  for (const std::string& p : plan.infeasible_paths) dropped.insert(p);
  out.suite.origin = suite.origin;
  for (const TestTerm& t : suite.terms) {
    if (out.stimuli.count(t.label)) {
      out.suite.terms.push_back(t);
      dropped.erase(t.path.label);
    }
  }
  out.infeasible_paths.assign(dropped.begin(), dropped.end());
  return out;
}

RtGraph LoadMutant(const RtGraph& golden, const std::string& fault, const std::string& mutant) {
  if (!fault.empty()) return InjectFault(golden, FaultSpec::Parse(fault));
  if (!mutant.empty()) {
    RtGraph g = MergeEquivalentRibs(LoadGraph(mutant));
    RequireValid(g);
    return g;
  }
  return golden;
}

void Emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- commands

int CmdParse(const Input& in, bool as_json, std::ostream& out) {
  if (in.program.empty()) throw UsageError("--program is required");
  Program p = LoadProgram(in);
  if (as_json) {
    std::size_t assignments = 0;
    for (const BodyItem& item : p.body) {
      if (std::holds_alternative<Assignment>(item)) ++assignments;
    }
    Emit(out, json{{"inputs", p.inputs},
                   {"output", p.output},
                   {"assignments", assignments},
                   {"if_chains", p.IfChainCount()},
                   {"text", p.ToString()}});
  } else {
    out << p.ToString();
  }
  return kExitOk;
}

int CmdGraph(const Input& in, bool merge, bool as_json, std::ostream& out) {
  if (in.program.empty() && in.graph.empty()) {
    throw UsageError("one of --program or --graph is required");
  }
  RtGraph g;
  std::optional<SourceMap> map;
  if (!in.program.empty()) {
    BuildResult built = BuildRtg(LoadProgram(in));
    g = std::move(built.graph);
    map = std::move(built.source_map);
  } else {
    g = LoadGraph(in.graph);
    if (merge) g = MergeEquivalentRibs(g);
  }
  std::vector<Violation> violations = ValidateGraph(g);
  if (as_json) {
    json v = json::array();
    for (const Violation& x : violations) v.push_back({{"code", x.code}, {"message", x.message}});
    json doc{{"graph", GraphToJson(g)}, {"violations", v}};
    if (map) {
      json frags = json::object();
      for (const auto& [id, info] : map->fragments) {
        json f{{"span", info.span.ToString()}};
        if (info.condition) {
          if (info.condition->guard) f["guard"] = info.condition->guard->ToString();
          json neg = json::array();
          for (const Guard& n : info.condition->negated) neg.push_back(n.ToString());
          f["negated"] = neg;
        }
        frags[id] = f;
      }
      doc["source_map"] = frags;
    }
    Emit(out, doc);
  } else {
    out << "nodes:";
    for (const Node& n : g.nodes()) out << " " << n.name << "(" << NodeRoleName(n.role) << ")";
    out << "\n";
    for (const Rib& r : g.ribs()) {
      out << r.fragment << "  " << r.src << " -> " << r.dst << ":";
      for (const Statement& s : r.statements) out << "  " << s.ToString() << ";";
      out << "\n";
    }
    if (violations.empty()) {
      out << "valid\n";
    } else {
      for (const Violation& x : violations) out << x.code << ": " << x.message << "\n";
    }
  }
  return violations.empty() ? kExitOk : kExitFindings;
}

int CmdPaths(const Input& in, const Caps& caps, bool as_json, std::ostream& out) {
  Model m = LoadModel(in);
  std::vector<Path> paths = EnumeratePaths(m.graph, caps);
  if (as_json) {
    json list = json::array();
    for (const Path& p : paths) {
      ActivationFormula f = MakeActivationFormula(m.graph, p);
      list.push_back({{"label", p.label}, {"nodes", p.nodes}, {"activation", f.ToString()}});
    }
    Emit(out, json{{"formula", PathFormula(paths)}, {"paths", list}});
  } else {
    out << PathFormula(paths) << "\n";
    for (const Path& p : paths) {
      out << p.label << "  " << MakeActivationFormula(m.graph, p).ToString() << "\n";
    }
  }
  return kExitOk;
}

int CmdTerms(const Input& in, const std::string& which, const Caps& caps, bool as_json,
             std::ostream& out) {
  Model m = LoadModel(in);
  TestSuite suite = SelectSuite(m.graph, EnumeratePaths(m.graph, caps), which, caps);
  if (as_json) {
    json list = json::array();
    for (const TestTerm& t : suite.terms) list.push_back(TermJson(t));
    Emit(out, json{{"suite", SuiteOriginName(suite.origin)}, {"terms", list}});
  } else {
    for (const TestTerm& t : suite.terms) {
      out << t.label << "  " << t.path.label << "  " << Join(Labels(t.selection), " ") << "\n";
    }
  }
  return kExitOk;
}

int CmdCover(const Input& in, const std::string& mode, const std::string& solver,
             const Caps& caps, bool as_json, std::ostream& out) {
  Model m = LoadModel(in);
  std::vector<Path> paths = EnumeratePaths(m.graph, caps);
  CoverMode cm = ParseCoverMode(solver);
  std::vector<std::string> chosen;
  bool exact = false;
  if (mode == "paths") {
    PathCover c = MinimalPathCover(m.graph, paths, cm, caps);
    for (const Path& p : c.paths) chosen.push_back(p.label);
    exact = c.exact;
  } else {
    DiagnosticTest d = MinimalDiagnosticTest(m.graph, BuildCompleteTest(m.graph, paths, caps),
                                             cm, caps);
    chosen = d.suite.Labels();
    exact = d.exact;
  }
  if (as_json) {
    Emit(out, json{{"mode", mode}, {"exact", exact}, {"size", chosen.size()}, {"chosen", chosen}});
  } else {
    out << mode << " cover (" << (exact ? "exact" : "greedy") << ", " << chosen.size()
        << "): " << Join(chosen, " ") << "\n";
  }
  return kExitOk;
}

int CmdFdt(const Input& in, const std::string& kind, const std::string& which,
           const std::string& response, const Caps& caps, bool as_json, std::ostream& out) {
  Model m = LoadModel(in);
  std::vector<Path> paths = EnumeratePaths(m.graph, caps);
  FaultDetectionTable t = kind == "generalized"
                              ? BuildGeneralizedFdt(m.graph, paths)
                              : BuildExtendedFdt(m.graph, SelectSuite(m.graph, paths, which, caps));
  if (!response.empty()) t = AttachResponse(t, ResponseVector::Parse(response));
  if (as_json) {
    Emit(out, TableToJson(t));
  } else {
    out << RenderTable(t);
  }
  return kExitOk;
}

int CmdInject(const Input& in, const std::string& fragment, int ordinal,
              const std::optional<int>& opcode, const std::optional<double>& constant,
              const std::optional<int>& operand, const std::string& out_file,
              std::ostream& out) {
  if (opcode.has_value() == constant.has_value()) {
    throw UsageError("exactly one of --op or --const is required");
  }
  Model m = LoadModel(in);
  FaultSpec f;
  f.fragment = fragment;
  f.ordinal = ordinal;
  if (opcode) {
    f.kind = FaultSpec::Kind::kOpcode;
    f.new_opcode = *opcode;
  } else {
    f.kind = FaultSpec::Kind::kConstant;
    f.new_constant = *constant;
    f.operand = operand;
  }
  json doc = GraphToJson(InjectFault(m.graph, f));
  if (out_file.empty()) {
    Emit(out, doc);
  } else {
    std::ofstream file(out_file, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot write '" + out_file + "'");
    file << doc.dump(2) << "\n";
    out << "wrote " << out_file << " (" << f.ToString() << ")\n";
  }
  return kExitOk;
}

int CmdEval(const Input& in, const std::vector<std::string>& bindings, bool as_json,
            std::ostream& out) {
  if (in.program.empty()) throw UsageError("--eval needs --program");
  Program p = LoadProgram(in);
  Stimulus s;
  for (const std::string& b : bindings) {
    auto eq = b.find('=');
    if (eq == std::string::npos) throw UsageError("--eval expects name=value, got '" + b + "'");
    try {
      s.env[b.substr(0, eq)] = std::stod(b.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--eval: bad number in '" + b + "'");
    }
  }
  ObservationTrace trace = ExecuteProgram(p, s);
  if (as_json) {
    json pts = json::array();
    for (const Observation& o : trace.points) {
      pts.push_back({{"node", o.node}, {"variable", o.variable}, {"value", o.value}});
    }
    Emit(out, json{{"output", trace.output}, {"points", pts}, {"warnings", trace.warnings}});
  } else {
    for (const Observation& o : trace.points) {
      out << o.node << "  " << o.variable << " = " << FormatNumber(o.value) << "\n";
    }
    out << p.output << " = " << FormatNumber(trace.output) << "\n";
  }
  return kExitOk;
}

struct RunArgs {
  std::string suite = "complete";
  double tolerance = 1e-9;
  bool permissive = false;
  std::string stimuli;
  std::string fault;
  std::string mutant;
  std::string table_out;
  std::vector<std::string> eval;
};

int CmdRun(const Input& in, const RunArgs& a, const Caps& caps, bool as_json,
           std::ostream& out, std::ostream& err) {
  if (!a.eval.empty()) return CmdEval(in, a.eval, as_json, out);
  Model m = LoadModel(in);
  std::vector<Path> paths = EnumeratePaths(m.graph, caps);
  Prepared prep = PrepareRun(m, SelectSuite(m.graph, paths, a.suite, caps), a.stimuli);
  for (const std::string& p : prep.infeasible_paths) {
    err << "warning: path " << p << " is infeasible; its terms are skipped\n";
  }
  RtGraph mutant = LoadMutant(m.graph, a.fault, a.mutant);
  RunOptions options{a.tolerance, a.permissive};
  ResponseVector v = RunSuite(m.graph, mutant, prep.suite, prep.stimuli, options);
  FaultDetectionTable t = AttachResponse(BuildExtendedFdt(m.graph, prep.suite), v);
  if (!a.table_out.empty()) {
    std::ofstream file(a.table_out, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot write '" + a.table_out + "'");
    file << TableToJson(t).dump(2) << "\n";
  }
  if (as_json) {
    Emit(out, json{{"V", v.bits}, {"table", TableToJson(t)}});
  } else {
    out << RenderTable(t) << "V = " << v.ToString() << "\n";
  }
  return kExitOk;
}

int CmdDiagnose(const std::string& table_file, const std::string& mode_text, const Caps& caps,
                bool as_json, std::ostream& out) {
  if (table_file.empty()) throw UsageError("--table is required");
  FaultDetectionTable t = TableFromJson(ParseJsonText(ReadFile(table_file), table_file));
  try {
    if (t.kind == TableKind::kGeneralized) {
      std::set<StatementId> suspects = DiagnoseGeneralized(t);
      if (as_json) {
        std::vector<StatementId> ids(suspects.begin(), suspects.end());
        Emit(out, json{{"kind", "generalized"}, {"suspects", Labels(ids)}});
      } else {
        out << "suspects = " << JoinLabels(suspects, " ") << "\n";
      }
      return suspects.empty() ? kExitOk : kExitFindings;
    }
    DiagnosisResult r = Diagnose(t, ParseExonerationMode(mode_text), caps);
    if (as_json) {
      std::vector<StatementId> h(r.exonerated.begin(), r.exonerated.end());
      Emit(out, json{{"F", DnfJson(r.candidates)},
                     {"H", Labels(h)},
                     {"Fprime", DnfJson(r.reduced)},
                     {"mode", ExonerationModeName(r.mode)},
                     {"groups", GroupsJson(r.groups)}});
    } else {
      out << "F = " << r.candidates.ToString() << "\n";
      out << "H = " << JoinLabels(r.exonerated, " ") << "\n";
      out << "F' = " << r.reduced.ToString() << "\n";
    }
    return kExitFindings;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoFailures) throw;
    if (as_json) {
      Emit(out, json{{"F", json::array()}, {"Fprime", json::array()}, {"status", "no fault detected"}});
    } else {
      out << "no fault detected\n";
    }
    return kExitOk;
  }
}

int CmdTestability(const Input& in, std::size_t target, const std::string& fragment,
                   bool exact, const Caps& caps, bool as_json, std::ostream& out) {
  Model m = LoadModel(in);
  std::vector<Path> paths = EnumeratePaths(m.graph, caps);
  PlacementOptions options;
  options.target = target;
  if (!fragment.empty()) options.focus_fragment = fragment;
  options.exact = exact;
  options.caps = caps;
  std::vector<AmbiguityGroup> before = AmbiguityGroups(m.graph, paths);
  Placement p = RecommendObservationPoints(m.graph, paths, options);
  std::vector<std::string> points;
  for (const ObservationPoint& o : p.points) points.push_back(o.ToString());
  if (as_json) {
    json doc{{"groups", GroupsJson(before)},
             {"points", points},
             {"groups_after", GroupsJson(p.groups)},
             {"achieved", p.achieved}};
    if (p.exhaustive_minimum) doc["exhaustive_minimum"] = *p.exhaustive_minimum;
    Emit(out, doc);
  } else {
    out << "groups: " << GroupsText(before) << "\n";
    out << "points: " << (points.empty() ? "-" : Join(points, " ")) << "\n";
    out << "groups after: " << GroupsText(p.groups) << "\n";
    out << "target met: " << (p.achieved ? "yes" : "no") << "\n";
    if (p.exhaustive_minimum) out << "exhaustive minimum: " << *p.exhaustive_minimum << "\n";
  }
  return p.achieved ? kExitOk : kExitFindings;
}

int CmdAll(const Input& in, const RunArgs& a, const std::string& mode_text,
           const std::string& report_file, const Caps& caps, bool as_json, std::ostream& out,
           std::ostream& err) {
  Model m = LoadModel(in);
  std::ostringstream text;
  json doc;
  const std::string source = in.program.empty() ? in.graph : in.program;
  text << "input: " << source << "\n";
  text << "graph: " << m.graph.nodes().size() << " nodes, " << m.graph.ribs().size()
       << " ribs, " << m.graph.Fragments().size() << " fragments\n";

  std::vector<Path> paths = EnumeratePaths(m.graph, caps);
  text << PathFormula(paths) << "\n";
  for (const Path& p : paths) {
    text << "  " << p.label << "  " << MakeActivationFormula(m.graph, p).ToString() << "\n";
  }
  Prepared prep = PrepareRun(m, SelectSuite(m.graph, paths, a.suite, caps), a.stimuli);
  for (const std::string& p : prep.infeasible_paths) {
    text << "infeasible path skipped: " << p << "\n";
  }
  text << "tests (" << prep.suite.terms.size() << "): " << Join(prep.suite.Labels(), " ") << "\n";

  RtGraph mutant = LoadMutant(m.graph, a.fault, a.mutant);
  if (!a.fault.empty()) text << "fault: " << FaultSpec::Parse(a.fault).ToString() << "\n";
  ResponseVector v = RunSuite(m.graph, mutant, prep.suite, prep.stimuli,
                              RunOptions{a.tolerance, a.permissive});
  FaultDetectionTable t = AttachResponse(BuildExtendedFdt(m.graph, prep.suite), v);
  text << RenderTable(t);

  std::vector<std::string> path_labels;
  for (const Path& p : paths) path_labels.push_back(p.label);
  doc["paths"] = path_labels;
  doc["tests"] = prep.suite.Labels();
  doc["infeasible_paths"] = prep.infeasible_paths;
  doc["V"] = v.bits;

  int status = kExitOk;
  if (v.AllZero()) {
    text << "no fault detected\n";
    doc["status"] = "no fault detected";
  } else {
    DiagnosisResult r = Diagnose(t, ParseExonerationMode(mode_text), caps);
    std::vector<StatementId> h(r.exonerated.begin(), r.exonerated.end());
    text << "F = " << r.candidates.ToString() << "\n";
    text << "H = " << JoinLabels(r.exonerated, " ") << "\n";
    text << "F' = " << r.reduced.ToString() << "\n";
    doc["F"] = DnfJson(r.candidates);
    doc["H"] = Labels(h);
    doc["Fprime"] = DnfJson(r.reduced);
    doc["groups"] = GroupsJson(r.groups);
    doc["status"] = "fault localized";
    status = kExitFindings;
  }
  std::string report = as_json ? doc.dump(2) + "\n" : text.str();
  if (!report_file.empty()) {
    std::ofstream file(report_file, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot write '" + report_file + "'");
    file << report;
  }
  out << report;
  (void)err;
  return status;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Register-transfer graph fault localization", "rtgdiag"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.set_version_flag("--version", "rtgdiag 1.0.0");

  Input in;
  RunArgs run;
  bool no_merge = false;
  std::string suite = "complete";
  std::string cover_mode = "paths";
  std::string solver = "auto";
  std::string kind = "extended";
  std::string response;
  std::string fragment;
  int ordinal = 0;
  std::optional<int> opcode;
  std::optional<double> constant;
  std::optional<int> operand;
  std::string out_file;
  std::string table_file;
  std::string mode = "strong";
  std::size_t target = 1;
  bool exact = false;
  std::string report_file;
  const auto suites = CLI::IsMember({"complete", "minimal", "diagnostic"});
  const auto modes = CLI::IsMember({"strong", "weak"});

  auto* parse = app.add_subcommand("parse", "parse a program and print it back");
  AddInput(parse, in, false);

  auto* graph = app.add_subcommand("graph", "build or load a graph, merge and validate it");
  AddInput(graph, in);
  graph->add_flag("--no-merge", no_merge, "skip merging of equivalent ribs");

  auto* paths = app.add_subcommand("paths", "enumerate paths and activation formulas");
  AddInput(paths, in);

  auto* terms = app.add_subcommand("terms", "expand test terms");
  AddInput(terms, in);
  terms->add_option("--suite", suite)->check(suites)->capture_default_str();

  auto* cover = app.add_subcommand("cover", "minimal path cover or diagnostic test");
  AddInput(cover, in);
  cover->add_option("--mode", cover_mode)
      ->check(CLI::IsMember({"paths", "diagnostic"}))
      ->capture_default_str();
  cover->add_option("--solver", solver)
      ->check(CLI::IsMember({"auto", "exact", "greedy"}))
      ->capture_default_str();

  auto* fdt = app.add_subcommand("fdt", "build a fault detection table");
  AddInput(fdt, in);
  fdt->add_option("--kind", kind)
      ->check(CLI::IsMember({"generalized", "extended"}))
      ->capture_default_str();
  fdt->add_option("--suite", suite)->check(suites)->capture_default_str();
  fdt->add_option("--response", response, "response vector, e.g. 0100");

  auto* inject = app.add_subcommand("inject", "mutate one statement");
  AddInput(inject, in);
  inject->add_option("--fragment", fragment)->required();
  inject->add_option("--ordinal", ordinal)->required();
  inject->add_option("--op", opcode, "replacement opcode");
  inject->add_option("--const", constant, "replacement constant");
  inject->add_option("--operand", operand, "operand index for --const");
  inject->add_option("--out", out_file, "write the mutant graph here");

  auto* runc = app.add_subcommand("run", "simulate a suite against a mutant");
  AddInput(runc, in);
  runc->add_option("--suite", run.suite)->check(suites)->capture_default_str();
  runc->add_option("--tolerance", run.tolerance)->capture_default_str();
  runc->add_flag("--permissive", run.permissive, "unbound variables read as 0");
  runc->add_option("--stimuli", run.stimuli, "JSON: term label -> {var: value}");
  auto* fault_opt = runc->add_option("--fault", run.fault, "fault spec, e.g. I5:3:op=3");
  runc->add_option("--mutant", run.mutant, "mutant graph (JSON)")->excludes(fault_opt);
  runc->add_option("--table-out", run.table_out, "write the table with V here");
  runc->add_option("--eval", run.eval, "execute the program with name=value inputs");

  auto* diagnose = app.add_subcommand("diagnose", "localize faults from a table with V");
  diagnose->add_option("--table", table_file)->required();
  diagnose->add_option("--mode", mode)->check(modes)->capture_default_str();

  auto* testability = app.add_subcommand("testability", "ambiguity groups and monitors");
  AddInput(testability, in);
  testability->add_option("--target", target)->capture_default_str();
  testability->add_option("--fragment", fragment, "only resolve groups touching this fragment");
  testability->add_flag("--exact", exact, "also run the exhaustive search");

  RunArgs all_run;
  auto* all = app.add_subcommand("all", "full pipeline with a single report");
  AddInput(all, in);
  all->add_option("--fault", all_run.fault, "fault spec, e.g. I5:3:op=3");
  all->add_option("--suite", all_run.suite)->check(suites)->capture_default_str();
  all->add_option("--stimuli", all_run.stimuli);
  all->add_option("--tolerance", all_run.tolerance)->capture_default_str();
  all->add_flag("--permissive", all_run.permissive);
  all->add_option("--mode", mode)->check(modes)->capture_default_str();
  all->add_option("--report", report_file, "also write the report here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Caps caps;
  if (const char* env = std::getenv("RTGDIAG_CAPS"); env != nullptr && *env != '\0') {
    try {
      caps = ParseCaps(env);
    } catch (const Error& e) {
      err << "rtgdiag: RTGDIAG_CAPS: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  const bool as_json = format == "json";

  try {
    if (*parse) return CmdParse(in, as_json, out);
    if (*graph) return CmdGraph(in, !no_merge, as_json, out);
    if (*paths) return CmdPaths(in, caps, as_json, out);
    if (*terms) return CmdTerms(in, suite, caps, as_json, out);
    if (*cover) return CmdCover(in, cover_mode, solver, caps, as_json, out);
    if (*fdt) return CmdFdt(in, kind, suite, response, caps, as_json, out);
    if (*inject) {
      return CmdInject(in, fragment, ordinal, opcode, constant, operand, out_file, out);
    }
    if (*runc) return CmdRun(in, run, caps, as_json, out, err);
    if (*diagnose) return CmdDiagnose(table_file, mode, caps, as_json, out);
    if (*testability) return CmdTestability(in, target, fragment, exact, caps, as_json, out);
    if (*all) return CmdAll(in, all_run, mode, report_file, caps, as_json, out, err);
  } catch (const UsageError& e) {
    err << "rtgdiag: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    for (const Diagnostic& d : e.diagnostics()) {
      err << in.program << ":" << d.line << ":" << d.column << ": " << d.message << "\n";
    }
    return kExitData;
  } catch (const Error& e) {
    err << "rtgdiag: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    err << "rtgdiag: malformed JSON: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace rtgdiag
