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

#ifndef RTGDIAG_TESTABILITY_H_
#define RTGDIAG_TESTABILITY_H_

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "rtgdiag/caps.h"
#include "rtgdiag/diagnosis.h"
#include "rtgdiag/rtg.h"
#include "rtgdiag/testsynth.h"

namespace rtgdiag {

// Extra monitor inside a fragment, observing the value right after the
// statement with the given ordinal.
struct ObservationPoint {
  std::string fragment;
  int after_ordinal = 0;

  std::string ToString() const;  // "I5@1"
  friend bool operator==(const ObservationPoint&, const ObservationPoint&) = default;
  friend std::strong_ordering operator<=>(const ObservationPoint& a,
                                          const ObservationPoint& b);
};

// Partition of the statements of `g`. Without added points two statements
// share a group iff the same paths run through them. An added point refines
// this: a statement's signature pairs each covering path with the first
// added point downstream of it on that path (or the output).
std::vector<AmbiguityGroup> AmbiguityGroups(const RtGraph& g, const std::vector<Path>& paths,
                                            const std::vector<ObservationPoint>& added = {});

struct PlacementOptions {
  std::size_t target = 1;  // maximum acceptable group size
  // Only groups containing a statement of this fragment must meet the target.
  std::optional<std::string> focus_fragment;
  // Also run the exhaustive search (graphs up to caps.exact_testability
  // statements) and return its optimum if it beats the greedy answer.
  bool exact = false;
  Caps caps;
};

struct Placement {
  std::vector<ObservationPoint> points;
  std::vector<AmbiguityGroup> groups;  // after placing `points`
  bool achieved = false;
  // Size of the exhaustive optimum when the exact search ran.
  std::optional<std::size_t> exhaustive_minimum;
};

// Greedy: split the largest offending group at the position inside one of
// its fragments that minimises the largest resulting piece, until every
// relevant group has at most `target` members or no position splits it.
Placement RecommendObservationPoints(const RtGraph& g, const std::vector<Path>& paths,
                                     const PlacementOptions& options);

// Smallest set of points meeting the target, by enumerating subsets of all
// positions in increasing size; nullopt if even all positions fail.
std::optional<std::vector<ObservationPoint>> MinimumObservationPoints(
    const RtGraph& g, const std::vector<Path>& paths, std::size_t target,
    const std::optional<std::string>& focus_fragment = std::nullopt);

}  // namespace rtgdiag

#endif  // RTGDIAG_TESTABILITY_H_
