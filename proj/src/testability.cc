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

#include "rtgdiag/testability.h"

#include <algorithm>
#include <map>
#include <set>

namespace rtgdiag {

namespace {

using Signature = std::vector<std::pair<std::size_t, std::string>>;

std::map<StatementId, Signature> Signatures(const RtGraph& g, const std::vector<Path>& paths,
                                            const std::vector<ObservationPoint>& added) {
  std::map<std::string, std::vector<int>> points;
  for (const ObservationPoint& p : added) points[p.fragment].push_back(p.after_ordinal);
  for (auto& [f, ords] : points) std::sort(ords.begin(), ords.end());

  std::map<StatementId, Signature> out;
  for (const StatementId& id : g.StatementIds()) out[id];
  for (std::size_t pi = 0; pi < paths.size(); ++pi) {
    const Path& path = paths[pi];
    for (std::size_t pos = 0; pos < path.ribs.size(); ++pos) {
      const Rib& rib = g.ribs()[path.ribs[pos]];
      for (const Statement& s : rib.statements) {
        std::string site = "OUT";
        auto own = points.find(rib.fragment);
        if (own != points.end()) {
          auto it = std::lower_bound(own->second.begin(), own->second.end(), s.ordinal);
          if (it != own->second.end()) site = rib.fragment + "@" + std::to_string(*it);
        }
        for (std::size_t next = pos + 1; site == "OUT" && next < path.ribs.size(); ++next) {
          const std::string& f = g.ribs()[path.ribs[next]].fragment;
          auto down = points.find(f);
          if (down != points.end() && !down->second.empty()) {
            site = f + "@" + std::to_string(down->second.front());
          }
        }
        out[g.IdOf(rib.fragment, s)].emplace_back(pi, site);
      }
    }
  }
  return out;
}

bool Relevant(const AmbiguityGroup& group, const std::optional<std::string>& focus) {
  if (!focus) return true;
  return std::any_of(group.members.begin(), group.members.end(),
                     [&](const StatementId& id) { return id.fragment == *focus; });
}

bool MeetsTarget(const std::vector<AmbiguityGroup>& groups, std::size_t target,
                 const std::optional<std::string>& focus) {
  return std::all_of(groups.begin(), groups.end(), [&](const AmbiguityGroup& g) {
    return !Relevant(g, focus) || g.members.size() <= target;
  });
}

std::vector<ObservationPoint> AllPositions(const RtGraph& g) {
  std::vector<ObservationPoint> out;
  for (const std::string& f : g.Fragments()) {
    int n = static_cast<int>(g.FragmentStatements(f)->size());
    for (int k = 1; k < n; ++k) out.push_back({f, k});
  }
  return out;
}

}  // namespace

std::string ObservationPoint::ToString() const {
  return fragment + "@" + std::to_string(after_ordinal);
}

std::strong_ordering operator<=>(const ObservationPoint& a, const ObservationPoint& b) {
  if (int c = NaturalCompare(a.fragment, b.fragment); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.after_ordinal <=> b.after_ordinal;
}

std::vector<AmbiguityGroup> AmbiguityGroups(const RtGraph& g, const std::vector<Path>& paths,
                                            const std::vector<ObservationPoint>& added) {
  std::map<StatementId, Signature> sigs = Signatures(g, paths, added);
  std::map<Signature, std::size_t> index;
  std::vector<AmbiguityGroup> groups;
  for (const StatementId& id : g.StatementIds()) {
    Signature sig = sigs[id];
    std::sort(sig.begin(), sig.end());
    auto [it, inserted] = index.emplace(sig, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].members.insert(id);
  }
  return groups;
}

Placement RecommendObservationPoints(const RtGraph& g, const std::vector<Path>& paths,
                                     const PlacementOptions& options) {
  Placement out;
  const std::size_t target = std::max<std::size_t>(options.target, 1);
  while (true) {
    out.groups = AmbiguityGroups(g, paths, out.points);
    const AmbiguityGroup* worst = nullptr;
    for (const AmbiguityGroup& group : out.groups) {
      if (!Relevant(group, options.focus_fragment) || group.members.size() <= target) continue;
      if (worst == nullptr || group.members.size() > worst->members.size()) worst = &group;
    }
    if (worst == nullptr) {
      out.achieved = true;
      break;
    }
    std::set<std::string> fragments;
    for (const StatementId& id : worst->members) fragments.insert(id.fragment);

    std::optional<ObservationPoint> best;
    std::size_t best_piece = worst->members.size();
    for (const ObservationPoint& candidate : AllPositions(g)) {
      if (!fragments.count(candidate.fragment)) continue;
      if (std::find(out.points.begin(), out.points.end(), candidate) != out.points.end()) {
        continue;
      }
      std::vector<ObservationPoint> trial = out.points;
      trial.push_back(candidate);
      std::size_t piece = 0;
      for (const AmbiguityGroup& split : AmbiguityGroups(g, paths, trial)) {
        std::size_t shared = 0;
        for (const StatementId& id : split.members) shared += worst->members.count(id);
        piece = std::max(piece, shared);
      }
      if (piece < best_piece) {
        best_piece = piece;
        best = candidate;
      }
    }
    if (!best) break;  // no position inside the group's fragments splits it
    out.points.push_back(*best);
  }

  std::size_t statements = g.StatementIds().size();
  if (options.exact && statements <= options.caps.exact_testability) {
    auto optimum = MinimumObservationPoints(g, paths, target, options.focus_fragment);
    if (optimum) {
      out.exhaustive_minimum = optimum->size();
      if (!out.achieved || optimum->size() < out.points.size()) {
        out.points = *optimum;
        out.achieved = true;
        out.groups = AmbiguityGroups(g, paths, out.points);
      }
    }
  }
  return out;
}

std::optional<std::vector<ObservationPoint>> MinimumObservationPoints(
    const RtGraph& g, const std::vector<Path>& paths, std::size_t target,
    const std::optional<std::string>& focus_fragment) {
  const std::vector<ObservationPoint> positions = AllPositions(g);
  const std::size_t n = positions.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      std::vector<ObservationPoint> trial;
      for (std::size_t i : pick) trial.push_back(positions[i]);
      if (MeetsTarget(AmbiguityGroups(g, paths, trial), target, focus_fragment)) return trial;
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace rtgdiag
