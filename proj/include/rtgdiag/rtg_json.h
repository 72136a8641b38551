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

#ifndef RTGDIAG_RTG_JSON_H_
#define RTGDIAG_RTG_JSON_H_

#include <string>

#include "json.hpp"
#include "rtgdiag/rtg.h"

namespace rtgdiag {

// {"inputs":[...], "output":"F", "nodes":[{name, role}],
//  "ribs":[{fragment, src, dst, source?, statements:[{ordinal, opcode,
//  target, operands:[{"var":..}|{"const":..}]}]}]}
// `inputs`, `output` and `source` are optional.
nlohmann::json GraphToJson(const RtGraph& g);
RtGraph GraphFromJson(const nlohmann::json& j);

// Reads a whole file; throws kIo if it cannot be opened.
std::string ReadFile(const std::string& path);
nlohmann::json ParseJsonText(const std::string& text, const std::string& origin);

RtGraph LoadGraph(const std::string& path);

}  // namespace rtgdiag

#endif  // RTGDIAG_RTG_JSON_H_
