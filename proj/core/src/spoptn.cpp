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

#include "spacesched/spoptn.hpp"

#include <algorithm>
#include <functional>
#include <list>
#include <queue>

namespace spacesched {

namespace {

// 1-based read of a trace in scan direction.
struct DirectedTrace {
  std::span<const Space> t;
  Direction dir;

  std::size_t size() const { return t.size(); }
  Space operator()(Index i) const {
    return dir == Direction::kLeftToRight ? t[i - 1] : t[t.size() - i];
  }
};

}  // namespace

Index end_index(std::span<const Space> trace, Direction dir) {
  const DirectedTrace d{trace, dir};
  Index best = 1;
  for (Index i = 2; i <= d.size(); ++i) {
    if (d(i) <= d(best)) best = i;
  }
  return best;
}

ScanResult scan(const StandardizedSet& std_set, Direction dir) {
  const auto& procs = std_set.processes;
  for (const auto& p : procs) {
    if (auto defect = standardization_defect(p.trace())) {
      throw Error(ErrorKind::kNotStandardized,
                  "not standardized: process " + p.id() + ": " + *defect);
    }
  }

  using Entry = std::pair<Space, std::size_t>;  // (peak - valley, process)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<DirectedTrace> traces;
  std::vector<Index> current(procs.size(), 1);
  std::vector<Index> stop(procs.size());
  traces.reserve(procs.size());

  ScanResult r;
  Space s = 0;
  for (std::size_t k = 0; k < procs.size(); ++k) {
    traces.push_back({procs[k].trace(), dir});
    stop[k] = end_index(procs[k].trace(), dir);
    s = checked_add(s, traces[k](1));
    if (1 + 2 <= stop[k]) {
      heap.emplace(checked_sub(traces[k](2), traces[k](1)), k);
    }
  }
  Space m = s;
  r.m_trajectory.push_back(m);
  r.s_trajectory.push_back(s);

  while (!heap.empty()) {
    const auto [delta, k] = heap.top();
    heap.pop();
    const Index at = current[k];
    if (at + 2 > stop[k]) continue;
    const DirectedTrace& tr = traces[k];
    m = std::max(m, checked_add(s, delta));
    s = checked_add(s, checked_sub(tr(at + 2), tr(at)));
    current[k] = at + 2;
    r.events.push_back({k, at, at + 2});
    r.m_trajectory.push_back(m);
    r.s_trajectory.push_back(s);
    if (current[k] + 2 <= stop[k]) {
      heap.emplace(checked_sub(tr(current[k] + 1), tr(current[k])), k);
    }
  }
  r.m = m;
  r.s_final = s;
  return r;
}

SpminResult spoptn(const ProcessSet& set) {
  SpminResult r;
  r.standardized = standardize(set);
  r.m_start = r.standardized.m_start;
  r.m_end = r.standardized.m_end;
  r.m_one = r.standardized.m_one;
  r.left = scan(r.standardized, Direction::kLeftToRight);
  r.right = scan(r.standardized, Direction::kRightToLeft);
  r.m_left = r.standardized.processes.empty() ? 0 : r.left.m;
  r.m_right = r.standardized.processes.empty() ? 0 : r.right.m;
  r.spmin = std::max({checked_add(r.m_left, r.m_one),
                      checked_add(r.m_right, r.m_one), r.m_start, r.m_end});
  return r;
}

namespace {

// A schedule under construction: a list of single-process moves, plus for
// every process the move that brings it onto each original index.
class MoveList {
 public:
  using Iter = std::list<std::size_t>::iterator;

  explicit MoveList(const ProcessSet& set) : arrival_(set.size()) {
    for (std::size_t k = 0; k < set.size(); ++k) {
      arrival_[k].assign(set[k].length() + 1, moves_.end());
    }
  }

  void push_back(std::size_t k, Index arrives_at) {
    arrival_[k][arrives_at] = moves_.insert(moves_.end(), k);
  }
  void push_front(std::size_t k, Index arrives_at) {
    arrival_[k][arrives_at] = moves_.insert(moves_.begin(), k);
  }
  Iter insert_before(Iter pos, std::size_t k, Index arrives_at) {
    return arrival_[k][arrives_at] = moves_.insert(pos, k);
  }
  Iter arrival(std::size_t k, Index at) {
    const Iter it = arrival_[k][at];
    if (it == moves_.end()) {
      throw Error(ErrorKind::kInternal,
                  "reconstruction invariant violated: missing move");
    }
    return it;
  }
  void retarget(std::size_t k, Index from, Index to) {
    arrival_[k][to] = arrival_[k][from];
    arrival_[k][from] = moves_.end();
  }

  const std::list<std::size_t>& moves() const { return moves_; }

 private:
  std::list<std::size_t> moves_;
  std::vector<std::vector<Iter>> arrival_;
};

enum class Placement { kStart, kEnd, kBefore, kAfter };

struct LiftOp {
  std::size_t process;
  std::vector<Index> removed;  // original indices, increasing
  Index successor;             // next surviving original index, 0 at the end
  Placement placement;
};

// Replays one process's removals forward to learn, for each, where the removed
// block sat relative to the survivors at that moment.
std::vector<LiftOp> lift_ops(std::size_t k, std::size_t length,
                             const std::vector<ReductionEvent>& log) {
  std::vector<Index> next(length + 2), prev(length + 2);
  for (Index j = 1; j <= length; ++j) {
    next[j] = j + 1 <= length ? j + 1 : 0;
    prev[j] = j - 1;
  }
  std::vector<LiftOp> ops;
  for (const auto& ev : log) {
    if (ev.kind == ReductionKind::kOneElement) continue;
    LiftOp op{k, ev.positions, next[ev.last()], Placement::kBefore};
    const Index before = prev[ev.first()];
    if (before == 0) {
      op.placement = Placement::kStart;
    } else if (op.successor == 0) {
      op.placement = Placement::kEnd;
    } else if (ev.kind == ReductionKind::kM1 || ev.kind == ReductionKind::kM4) {
      op.placement = Placement::kAfter;
    }
    for (Index j : ev.positions) {
      if (prev[j] != 0) next[prev[j]] = next[j];
      if (next[j] != 0) prev[next[j]] = prev[j];
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

// Undoes one removal. Before: the removed elements are visited while every
// other process holds the state preceding the crossing move. After: the same
// but holding the state that follows it. Start/End: prepend or append.
void lift(MoveList& ml, const LiftOp& op) {
  const std::size_t k = op.process;
  switch (op.placement) {
    case Placement::kStart: {
      // The process now starts at removed.front(); moves reach the rest.
      ml.push_front(k, op.successor);
      for (std::size_t r = op.removed.size(); r-- > 1;) {
        ml.push_front(k, op.removed[r]);
      }
      break;
    }
    case Placement::kEnd:
      for (Index j : op.removed) ml.push_back(k, j);
      break;
    case Placement::kBefore: {
      const auto crossing = ml.arrival(k, op.successor);
      for (Index j : op.removed) ml.insert_before(crossing, k, j);
      break;
    }
    case Placement::kAfter: {
      const auto crossing = ml.arrival(k, op.successor);
      ml.retarget(k, op.successor, op.removed.front());
      auto pos = std::next(crossing);
      for (std::size_t r = 1; r < op.removed.size(); ++r) {
        ml.insert_before(pos, k, op.removed[r]);
      }
      ml.insert_before(pos, k, op.successor);
      break;
    }
  }
}

constexpr std::size_t kMaxScheduleCells = 200'000'000;

}  // namespace

Interleaving reconstruct_schedule(const ProcessSet& set,
                                  const SpminResult& result) {
  const std::size_t n = set.size();
  std::size_t steps = 1;
  for (const auto& p : set) steps += p.length() - 1;
  if (steps > kMaxScheduleCells / std::max<std::size_t>(n, 1)) {
    throw Error(ErrorKind::kInvalidInput, "schedule too large to materialize");
  }

  const StandardizedSet& std_set = result.standardized;
  const auto& procs = std_set.processes;
  MoveList ml(set);

  // Left sweep: each event crosses a peak and lands on the next valley.
  for (const auto& ev : result.left.events) {
    const std::size_t o = std_set.origin[ev.process];
    const auto& map = std_set.index_map[o];
    ml.push_back(o, map[ev.from]);      // std index from+1
    ml.push_back(o, map[ev.from + 1]);  // std index from+2
  }
  // Right sweep, replayed backwards from the meeting valleys. Events that go
  // past the left sweep's stopping valley are dropped; that process simply
  // waits on a global valley.
  std::vector<const ScanEvent*> kept;
  for (const auto& ev : result.right.events) {
    const auto& p = procs[ev.process];
    const Index m = p.length();
    const Index landing = m + 1 - ev.to;  // original-direction std index
    if (landing >= end_index(p, Direction::kLeftToRight)) kept.push_back(&ev);
  }
  for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
    const ScanEvent& ev = **it;
    const std::size_t o = std_set.origin[ev.process];
    const auto& map = std_set.index_map[o];
    const Index m = procs[ev.process].length();
    const Index valley = m + 1 - ev.to;
    ml.push_back(o, map[valley]);      // std index valley+1
    ml.push_back(o, map[valley + 1]);  // std index valley+2
  }

  for (std::size_t k = n; k-- > 0;) {
    const auto ops = lift_ops(k, set[k].length(), std_set.provenance[k]);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) lift(ml, *it);
  }

  std::vector<std::vector<Index>> positions;
  positions.reserve(ml.moves().size() + 1);
  std::vector<Index> cur(n, 1);
  positions.push_back(cur);
  for (std::size_t k : ml.moves()) {
    ++cur[k];
    positions.push_back(cur);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (cur[k] > set[k].length()) {
      throw Error(ErrorKind::kInternal,
                  "reconstruction invariant violated: process " + set[k].id() +
                      " overruns its trace");
    }
  }
  Interleaving out = Interleaving::from_positions(set, std::move(positions));
  if (auto v = validate_interleaving(set, out); !v) {
    throw Error(ErrorKind::kInternal,
                "reconstruction invariant violated: " + v.violation);
  }
  if (sps(out) != result.spmin) {
    throw Error(ErrorKind::kInternal,
                "reconstruction invariant violated: schedule peak " +
                    std::to_string(sps(out)) + " differs from spmin " +
                    std::to_string(result.spmin));
  }
  return out;
}

Interleaving eager_schedule(const ProcessSet& set) {
  std::size_t longest = 0;
  for (const auto& p : set) longest = std::max(longest, p.length());
  std::vector<std::vector<Index>> positions;
  positions.reserve(longest);
  for (Index t = 1; t <= longest; ++t) {
    std::vector<Index> pos(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) {
      pos[k] = std::min<Index>(t, set[k].length());
    }
    positions.push_back(std::move(pos));
  }
  return Interleaving::from_positions(set, std::move(positions));
}

}  // namespace spacesched
