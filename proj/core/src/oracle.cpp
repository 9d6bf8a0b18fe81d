// Copyright 2026 The spacesched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spacesched/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace spacesched {

namespace {

constexpr std::uint64_t kUnreached = std::numeric_limits<std::uint64_t>::max();

// Mixed-radix encoding of 0-based position tuples.
class StateSpace {
 public:
  StateSpace(const ProcessSet& set, std::uint64_t budget) : set_(set) {
    stride_.resize(set.size());
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < set.size(); ++k) {
      stride_[k] = total;
      const std::uint64_t len = set[k].length();
      if (total > budget / len) {
        throw Error(ErrorKind::kBudgetExceeded, "state space too large");
      }
      total *= len;
    }
    size_ = total;
  }

  std::uint64_t size() const { return size_; }
  std::uint64_t goal() const { return size_ - 1; }

  std::size_t position(std::uint64_t state, std::size_t k) const {
    return (state / stride_[k]) % set_[k].length();
  }

  Space sum(std::uint64_t state) const {
    Space s = 0;
    for (std::size_t k = 0; k < set_.size(); ++k) {
      s = checked_add(s, set_[k].trace()[position(state, k)]);
    }
    return s;
  }

  std::uint64_t stride(std::size_t k) const { return stride_[k]; }

 private:
  const ProcessSet& set_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t size_ = 1;
};

struct SearchResult {
  Space best = 0;
  std::vector<std::uint64_t> parent;
  std::uint64_t goal = 0;
};

SearchResult bottleneck_search(const ProcessSet& set, std::uint64_t budget) {
  if (set.empty()) throw Error(ErrorKind::kInvalidInput, "empty process set");
  const StateSpace space(set, budget);
  const std::size_t n = set.size();
  std::vector<Space> cost(space.size(), std::numeric_limits<Space>::max());
  std::vector<std::uint64_t> parent(space.size(), kUnreached);
  std::vector<bool> done(space.size(), false);

  using Item = std::pair<Space, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  cost[0] = space.sum(0);
  parent[0] = 0;
  open.emplace(cost[0], 0);

  std::vector<std::size_t> movable;
  while (!open.empty()) {
    const auto [c, state] = open.top();
    open.pop();
    if (done[state]) continue;
    done[state] = true;
    if (state == space.goal()) break;

    movable.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (space.position(state, k) + 1 < set[k].length()) movable.push_back(k);
    }
    const std::uint64_t subsets = std::uint64_t{1} << movable.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      std::uint64_t next = state;
      for (std::size_t b = 0; b < movable.size(); ++b) {
        if (mask >> b & 1) next += space.stride(movable[b]);
      }
      if (done[next]) continue;
      const Space nc = std::max(c, space.sum(next));
      if (nc < cost[next]) {
        cost[next] = nc;
        parent[next] = state;
        open.emplace(nc, next);
      }
    }
  }
  return {cost[space.goal()], std::move(parent), space.goal()};
}

}  // namespace

Space oracle_spmin(const ProcessSet& set, std::uint64_t budget) {
  return bottleneck_search(set, budget).best;
}

Interleaving oracle_schedule(const ProcessSet& set, std::uint64_t budget) {
  const SearchResult r = bottleneck_search(set, budget);
  const StateSpace space(set, budget);
  std::vector<std::uint64_t> path;
  for (std::uint64_t s = r.goal;; s = r.parent[s]) {
    path.push_back(s);
    if (s == 0) break;
  }
  std::reverse(path.begin(), path.end());
  std::vector<std::vector<Index>> positions;
  positions.reserve(path.size());
  for (std::uint64_t s : path) {
    std::vector<Index> pos(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) pos[k] = space.position(s, k) + 1;
    positions.push_back(std::move(pos));
  }
  return Interleaving::from_positions(set, std::move(positions));
}

namespace {

struct Enumerator {
  const ProcessSet& set;
  std::uint64_t limit;
  std::uint64_t visited = 0;
  Space best = std::numeric_limits<Space>::max();
  std::vector<Index> pos;

  Space tuple_sum() const {
    Space s = 0;
    for (std::size_t k = 0; k < set.size(); ++k) {
      s = checked_add(s, set[k].at(pos[k]));
    }
    return s;
  }

  // Walks every Boolean advance vector from the current state; `peak` is the
  // sps of the prefix recorded so far.
  void walk(Space peak) {
    std::vector<std::size_t> movable;
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (pos[k] < set[k].length()) movable.push_back(k);
    }
    if (movable.empty()) {
      if (++visited > limit) {
        throw Error(ErrorKind::kBudgetExceeded, "interleaving count exceeds limit");
      }
      best = std::min(best, peak);
      return;
    }
    const std::uint64_t subsets = std::uint64_t{1} << movable.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      for (std::size_t b = 0; b < movable.size(); ++b) {
        if (mask >> b & 1) ++pos[movable[b]];
      }
      walk(std::max(peak, tuple_sum()));
      for (std::size_t b = 0; b < movable.size(); ++b) {
        if (mask >> b & 1) --pos[movable[b]];
      }
    }
  }
};

}  // namespace

Space enumerate_spmin(const ProcessSet& set, std::uint64_t limit) {
  if (set.empty()) throw Error(ErrorKind::kInvalidInput, "empty process set");
  Enumerator e{set, limit, 0, std::numeric_limits<Space>::max(), {}};
  e.pos.assign(set.size(), 1);
  e.walk(e.tuple_sum());
  return e.best;
}

}  // namespace spacesched
