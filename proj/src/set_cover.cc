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

#include "rtgdiag/set_cover.h"

#include <algorithm>
#include <string>

#include "rtgdiag/error.h"

namespace rtgdiag {

namespace {

std::vector<std::size_t> Greedy(const std::vector<std::vector<std::size_t>>& sets,
                                std::size_t universe) {
  std::vector<bool> covered(universe, false);
  std::size_t remaining = universe;
  std::vector<std::size_t> chosen;
  while (remaining > 0) {
    std::size_t best = sets.size(), best_gain = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::size_t gain = 0;
      for (std::size_t e : sets[i]) gain += !covered[e];
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    chosen.push_back(best);
    for (std::size_t e : sets[best]) {
      if (!covered[e]) {
        covered[e] = true;
        --remaining;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

class ExactSearch {
 public:
  ExactSearch(const std::vector<std::vector<std::size_t>>& sets, std::size_t universe)
      : sets_(sets), count_(universe, 0) {
    for (const auto& s : sets_) max_size_ = std::max(max_size_, s.size());
  }

  bool Find(std::size_t k) {
    k_ = k;
    chosen_.clear();
    covered_ = 0;
    std::fill(count_.begin(), count_.end(), 0);
    return Dfs(0);
  }

  const std::vector<std::size_t>& chosen() const { return chosen_; }

 private:
  void Add(std::size_t i) {
    for (std::size_t e : sets_[i]) covered_ += count_[e]++ == 0;
  }
  void Remove(std::size_t i) {
    for (std::size_t e : sets_[i]) covered_ -= --count_[e] == 0;
  }

  bool Dfs(std::size_t start) {
    std::size_t uncovered = count_.size() - covered_;
    if (uncovered == 0) return true;
    std::size_t slots = k_ - chosen_.size();
    if (slots == 0 || uncovered > slots * max_size_) return false;
    std::size_t first = 0;
    while (count_[first] > 0) ++first;
    for (std::size_t i = start; i < sets_.size(); ++i) {
      // Any completion must still cover `first` with a set at index >= i.
      bool later_covers = false;
      for (std::size_t j = i; j < sets_.size() && !later_covers; ++j) {
        later_covers = std::binary_search(sorted_(j).begin(), sorted_(j).end(), first);
      }
      if (!later_covers) return false;
      chosen_.push_back(i);
      Add(i);
      if (Dfs(i + 1)) return true;
      Remove(i);
      chosen_.pop_back();
    }
    return false;
  }

  const std::vector<std::size_t>& sorted_(std::size_t j) {
    if (sorted_cache_.empty()) {
      sorted_cache_ = sets_;
      for (auto& s : sorted_cache_) std::sort(s.begin(), s.end());
    }
    return sorted_cache_[j];
  }

  const std::vector<std::vector<std::size_t>>& sets_;
  std::vector<std::vector<std::size_t>> sorted_cache_;
  std::vector<std::size_t> count_;
  std::vector<std::size_t> chosen_;
  std::size_t covered_ = 0;
  std::size_t k_ = 0;
  std::size_t max_size_ = 0;
};

}  // namespace

std::optional<std::size_t> FirstUncoverable(
    const std::vector<std::vector<std::size_t>>& sets, std::size_t universe) {
  std::vector<bool> seen(universe, false);
  for (const auto& s : sets) {
    for (std::size_t e : s) seen.at(e) = true;
  }
  for (std::size_t e = 0; e < universe; ++e) {
    if (!seen[e]) return e;
  }
  return std::nullopt;
}

CoverSolution SolveSetCover(const std::vector<std::vector<std::size_t>>& sets,
                            std::size_t universe, CoverMode mode,
                            std::size_t exact_cap) {
  if (auto e = FirstUncoverable(sets, universe)) {
    throw Error(ErrorCode::kUncoverable, "element " + std::to_string(*e) + " is in no set");
  }
  std::vector<std::size_t> greedy = Greedy(sets, universe);
  bool exact = mode == CoverMode::kExact ||
               (mode == CoverMode::kAuto && sets.size() <= exact_cap);
  if (!exact || universe == 0) return {greedy, universe == 0};

  ExactSearch search(sets, universe);
  for (std::size_t k = 1; k <= greedy.size(); ++k) {
    if (search.Find(k)) return {search.chosen(), true};
  }
  return {greedy, true};
}

}  // namespace rtgdiag
