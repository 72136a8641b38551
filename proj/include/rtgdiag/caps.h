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

#ifndef RTGDIAG_CAPS_H_
#define RTGDIAG_CAPS_H_

#include <cstddef>
#include <string>

namespace rtgdiag {

// Explosion limits shared by the path, term, candidate and cover searches.
struct Caps {
  std::size_t max_paths = 1'000'000;
  std::size_t max_terms = 1'000'000;
  std::size_t max_candidates = 100'000;
  // Set-cover instances with at most this many sets are solved exactly.
  std::size_t exact_cover = 20;
  // Observation-point search is verified exhaustively up to this many
  // statements.
  std::size_t exact_testability = 12;
};

// Parses "paths=N,terms=N,candidates=N,exact=N,testability=N" (any subset,
// any order) over `base`. Throws kFormat on unknown keys or bad numbers.
Caps ParseCaps(const std::string& spec, Caps base = {});

}  // namespace rtgdiag

#endif  // RTGDIAG_CAPS_H_
