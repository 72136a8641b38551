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

#include "rtgdiag/rtg_json.h"

#include <fstream>
#include <sstream>

#include "rtgdiag/error.h"

namespace rtgdiag {

using nlohmann::json;

namespace {

NodeRole RoleFromName(const std::string& name) {
  if (name == "input") return NodeRole::kInput;
  if (name == "output") return NodeRole::kOutput;
  if (name == "internal") return NodeRole::kInternal;
  throw Error(ErrorCode::kFormat, "unknown node role '" + name + "'");
}

json OperandToJson(const Operand& o) {
  if (o.is_variable()) return json{{"var", o.name}};
  return json{{"const", o.value}};
}

Operand OperandFromJson(const json& j) {
  if (j.contains("var")) return Operand::Var(j.at("var").get<std::string>());
  if (j.contains("const")) return Operand::Const(j.at("const").get<double>());
  throw Error(ErrorCode::kFormat, "operand must be {\"var\":..} or {\"const\":..}");
}

}  // namespace

json GraphToJson(const RtGraph& g) {
  json j;
  if (!g.inputs().empty()) j["inputs"] = g.inputs();
  if (!g.output().empty()) j["output"] = g.output();
  j["nodes"] = json::array();
  for (const Node& n : g.nodes()) {
    j["nodes"].push_back({{"name", n.name}, {"role", std::string(NodeRoleName(n.role))}});
  }
  j["ribs"] = json::array();
  for (const Rib& r : g.ribs()) {
    json rj{{"fragment", r.fragment}, {"src", r.src}, {"dst", r.dst}};
    if (!r.source_key.empty()) rj["source"] = r.source_key;
    rj["statements"] = json::array();
    for (const Statement& s : r.statements) {
      json ops = json::array();
      for (const Operand& o : s.operands) ops.push_back(OperandToJson(o));
      rj["statements"].push_back({{"ordinal", s.ordinal},
                                  {"opcode", s.opcode},
                                  {"target", s.target},
                                  {"operands", ops}});
    }
    j["ribs"].push_back(std::move(rj));
  }
  return j;
}

RtGraph GraphFromJson(const json& j) {
  try {
    std::vector<Node> nodes;
    for (const json& nj : j.at("nodes")) {
      nodes.push_back({nj.at("name").get<std::string>(),
                       RoleFromName(nj.at("role").get<std::string>())});
    }
    std::vector<Rib> ribs;
    for (const json& rj : j.at("ribs")) {
      Rib r;
      r.fragment = rj.at("fragment").get<std::string>();
      r.src = rj.at("src").get<std::string>();
      r.dst = rj.at("dst").get<std::string>();
      r.source_key = rj.value("source", std::string());
      for (const json& sj : rj.at("statements")) {
        Statement s;
        s.ordinal = sj.at("ordinal").get<int>();
        s.opcode = sj.at("opcode").get<int>();
        s.target = sj.at("target").get<std::string>();
        for (const json& oj : sj.at("operands")) s.operands.push_back(OperandFromJson(oj));
        r.statements.push_back(std::move(s));
      }
      ribs.push_back(std::move(r));
    }
    std::vector<std::string> inputs;
    if (j.contains("inputs")) inputs = j.at("inputs").get<std::vector<std::string>>();
    return RtGraph(std::move(nodes), std::move(ribs), std::move(inputs),
                   j.value("output", std::string()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("malformed graph document: ") + e.what());
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json ParseJsonText(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kFormat, origin + ": " + e.what());
  }
}

RtGraph LoadGraph(const std::string& path) {
  return GraphFromJson(ParseJsonText(ReadFile(path), path));
}

}  // namespace rtgdiag
