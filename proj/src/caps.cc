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

#include "rtgdiag/caps.h"

#include <charconv>
#include <sstream>

#include "rtgdiag/error.h"

namespace rtgdiag {

Caps ParseCaps(const std::string& spec, Caps base) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kFormat, "cap '" + item + "' must be key=value");
    }
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc() || ptr != value.data() + value.size() || n == 0) {
      throw Error(ErrorCode::kFormat, "cap '" + key + "' needs a positive integer");
    }
    if (key == "paths") {
      base.max_paths = n;
    } else if (key == "terms") {
      base.max_terms = n;
    } else if (key == "candidates") {
      base.max_candidates = n;
    } else if (key == "exact") {
      base.exact_cover = n;
    } else if (key == "testability") {
      base.exact_testability = n;
    } else {
      throw Error(ErrorCode::kFormat, "unknown cap '" + key + "'");
    }
  }
  return base;
}

}  // namespace rtgdiag
