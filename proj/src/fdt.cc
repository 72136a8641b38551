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

#include "rtgdiag/fdt.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "rtgdiag/error.h"

namespace rtgdiag {

using nlohmann::json;

ResponseVector ResponseVector::Parse(std::string_view text) {
  ResponseVector v;
  for (char c : text) {
    if (c == '0' || c == '1') {
      v.bits.push_back(c - '0');
    } else if (c != ',' && c != ' ' && c != '(' && c != ')') {
      throw Error(ErrorCode::kFormat,
                  "response vector may only contain 0 and 1, got '" + std::string(text) + "'");
    }
  }
  return v;
}

std::string ResponseVector::ToString() const {
  std::string out = "(";
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(bits[i]);
  }
  return out + ")";
}

bool ResponseVector::AllZero() const {
  return std::all_of(bits.begin(), bits.end(), [](int b) { return b == 0; });
}

std::string_view TableKindName(TableKind kind) {
  return kind == TableKind::kGeneralized ? "generalized" : "extended";
}

FaultDetectionTable BuildGeneralizedFdt(const RtGraph& g, const std::vector<Path>& paths) {
  FaultDetectionTable t;
  t.kind = TableKind::kGeneralized;
  t.columns = g.StatementIds();
  for (const Path& p : paths) {
    FdtRow row{p.label, p.label, {}};
    for (std::size_t r : p.ribs) {
      for (const StatementId& id : g.RibStatementIds(r)) row.marks.insert(id);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

FaultDetectionTable BuildExtendedFdt(const RtGraph& g, const TestSuite& suite) {
  FaultDetectionTable t;
  t.kind = TableKind::kExtended;
  t.columns = g.StatementIds();
  for (const TestTerm& term : suite.terms) {
    t.rows.push_back({term.label, term.path.label,
                      std::set<StatementId>(term.selection.begin(), term.selection.end())});
  }
  return t;
}

FaultDetectionTable AttachResponse(const FaultDetectionTable& t, const ResponseVector& v) {
  if (v.bits.size() != t.rows.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "response vector has " + std::to_string(v.bits.size()) + " bits but the table has " +
                    std::to_string(t.rows.size()) + " rows");
  }
  FaultDetectionTable out = t;
  out.response = v;
  return out;
}

json TableToJson(const FaultDetectionTable& t) {
  json j;
  j["kind"] = std::string(TableKindName(t.kind));
  j["columns"] = json::array();
  for (const StatementId& id : t.columns) {
    j["columns"].push_back({{"id", id.Label()},
                            {"fragment", id.fragment},
                            {"opcode", id.opcode},
                            {"ordinal", id.ordinal}});
  }
  j["rows"] = json::array();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const FdtRow& row = t.rows[i];
    json marks = json::array();
    for (const StatementId& id : t.columns) {
      if (row.marks.count(id)) marks.push_back(id.Label());
    }
    json rj{{"label", row.label}, {"path", row.path}, {"marks", marks}};
    if (t.response) rj["v"] = t.response->bits[i];
    j["rows"].push_back(std::move(rj));
  }
  return j;
}

FaultDetectionTable TableFromJson(const json& j) {
  try {
    FaultDetectionTable t;
    std::string kind = j.value("kind", std::string("extended"));
    if (kind == "generalized") {
      t.kind = TableKind::kGeneralized;
    } else if (kind == "extended") {
      t.kind = TableKind::kExtended;
    } else {
      throw Error(ErrorCode::kFormat, "unknown table kind '" + kind + "'");
    }
    std::map<std::string, StatementId> by_label;
    for (const json& cj : j.at("columns")) {
      StatementId id{cj.at("fragment").get<std::string>(), cj.at("opcode").get<int>(),
                     cj.at("ordinal").get<int>(), false};
      std::string label = cj.at("id").get<std::string>();
      id.show_ordinal = label != id.Label();
      if (label != id.Label()) {
        throw Error(ErrorCode::kFormat, "column id '" + label + "' does not match its fields");
      }
      by_label[label] = id;
      t.columns.push_back(id);
    }
    std::vector<int> bits;
    bool any_v = false, all_v = true;
    for (const json& rj : j.at("rows")) {
      FdtRow row;
      row.label = rj.at("label").get<std::string>();
      row.path = rj.value("path", row.label);
      for (const json& m : rj.at("marks")) {
        std::string label = m.get<std::string>();
        auto it = by_label.find(label);
        if (it == by_label.end()) {
          throw Error(ErrorCode::kFormat,
                      "row " + row.label + " marks unknown column '" + label + "'");
        }
        row.marks.insert(it->second);
      }
      if (rj.contains("v") && !rj.at("v").is_null()) {
        int v = rj.at("v").get<int>();
        if (v != 0 && v != 1) throw Error(ErrorCode::kFormat, "response bits must be 0 or 1");
        bits.push_back(v);
        any_v = true;
      } else {
        all_v = false;
      }
      t.rows.push_back(std::move(row));
    }
    if (any_v && !all_v) throw Error(ErrorCode::kFormat, "either every row or no row has \"v\"");
    if (any_v) t.response = ResponseVector{bits};
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("malformed table document: ") + e.what());
  }
}

std::size_t DisplayWidth(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

std::string RenderTable(const FaultDetectionTable& t, const std::set<StatementId>* faults) {
  const std::string corner = "T_i\\I_j";
  std::size_t label_width = DisplayWidth(corner);
  for (const FdtRow& row : t.rows) label_width = std::max(label_width, DisplayWidth(row.label));
  if (faults) label_width = std::max<std::size_t>(label_width, 6);

  auto pad = [](const std::string& s, std::size_t width) {
    return s + std::string(width > DisplayWidth(s) ? width - DisplayWidth(s) : 0, ' ');
  };
  std::ostringstream os;
  auto line = [&](const std::string& head, auto&& cell, const std::string& tail) {
    std::string out = pad(head, label_width);
    for (const StatementId& id : t.columns) {
      std::string label = id.Label();
      out += "  " + pad(cell(id), DisplayWidth(label));
    }
    if (!tail.empty()) out += "  " + tail;
    while (!out.empty() && out.back() == ' ') out.pop_back();
    os << out << "\n";
  };
  line(corner, [](const StatementId& id) { return id.Label(); }, t.response ? "V" : "");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const FdtRow& row = t.rows[i];
    line(row.label, [&](const StatementId& id) { return row.marks.count(id) ? "1" : ""; },
         t.response ? std::to_string(t.response->bits[i]) : "");
  }
  if (faults) {
    line("Faults", [&](const StatementId& id) { return faults->count(id) ? "1" : ""; }, "");
  }
  return os.str();
}

}  // namespace rtgdiag
