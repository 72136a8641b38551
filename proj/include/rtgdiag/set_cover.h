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

#ifndef RTGDIAG_SET_COVER_H_
#define RTGDIAG_SET_COVER_H_

#include <cstddef>
#include <optional>
#include <vector>

namespace rtgdiag {

enum class CoverMode {
  kAuto,    // exact up to the cap, greedy above it
  kExact,
  kGreedy,
};

struct CoverSolution {
  std::vector<std::size_t> chosen;  // ascending set indices
  bool exact = false;
};

// First element in [0, universe) that no set contains.
std::optional<std::size_t> FirstUncoverable(
    const std::vector<std::vector<std::size_t>>& sets, std::size_t universe);

// Minimum-cardinality cover of [0, universe). The exact search is an
// iterative deepening branch and bound over set indices in ascending order,
// bounded above by the greedy solution, so among optimal covers the
// lexicographically smallest index sequence is returned. Greedy ties go to
// the lower index. Throws kUncoverable if some element is in no set.
CoverSolution SolveSetCover(const std::vector<std::vector<std::size_t>>& sets,
                            std::size_t universe, CoverMode mode,
                            std::size_t exact_cap);

}  // namespace rtgdiag

#endif  // RTGDIAG_SET_COVER_H_
