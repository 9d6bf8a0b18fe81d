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

#include "spacesched/standardize.hpp"

#include <algorithm>

namespace spacesched {

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kM0: return "M0";
    case ReductionKind::kM1: return "M1";
    case ReductionKind::kM2: return "M2";
    case ReductionKind::kM3: return "M3";
    case ReductionKind::kM4: return "M4";
    case ReductionKind::kStartPeak: return "start-peak";
    case ReductionKind::kEndPeak: return "end-peak";
    case ReductionKind::kOneElement: return "one-element";
  }
  return "?";
}

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::kMizz: return "mizz";
    case Shape::kMdzz: return "mdzz";
    case Shape::kMidzz: return "midzz";
    case Shape::kOther: return "other";
  }
  return "?";
}

namespace {

// Window of up to four values starting at some index; `size` counts how many
// exist.
struct Window {
  Space v[4] = {0, 0, 0, 0};
  int size = 0;
};

std::optional<ReductionKind> match_window(const Window& w) {
  const Space* a = w.v;
  if (w.size >= 2 && a[0] == a[1]) return ReductionKind::kM0;
  if (w.size >= 3) {
    if (a[0] <= a[1] && a[1] <= a[2]) return ReductionKind::kM1;
    if (a[0] >= a[1] && a[1] >= a[2]) return ReductionKind::kM2;
  }
  if (w.size >= 4) {
    if (a[0] > a[1] && a[1] < a[2] && a[2] > a[3] && a[0] >= a[2] &&
        a[1] >= a[3]) {
      return ReductionKind::kM3;
    }
    if (a[0] < a[1] && a[1] > a[2] && a[2] < a[3] && a[0] <= a[2] &&
        a[1] <= a[3]) {
      return ReductionKind::kM4;
    }
  }
  return std::nullopt;
}

int removed_count(ReductionKind kind) {
  return kind == ReductionKind::kM3 || kind == ReductionKind::kM4 ? 2 : 1;
}

constexpr std::size_t kNil = static_cast<std::size_t>(-1);

// Doubly linked view over a trace. Nodes are 0-based original indices, so
// removals keep every surviving element addressable by its original position.
class LinkedTrace {
 public:
  explicit LinkedTrace(std::span<const Space> values)
      : values_(values), next_(values.size()), prev_(values.size()) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      next_[j] = j + 1 < values.size() ? j + 1 : kNil;
      prev_[j] = j == 0 ? kNil : j - 1;
    }
    head_ = values.empty() ? kNil : 0;
    tail_ = values.empty() ? kNil : values.size() - 1;
    size_ = values.size();
  }

  std::size_t head() const { return head_; }
  std::size_t tail() const { return tail_; }
  std::size_t size() const { return size_; }
  std::size_t next(std::size_t j) const { return next_[j]; }
  std::size_t prev(std::size_t j) const { return prev_[j]; }
  Space value(std::size_t j) const { return values_[j]; }

  void erase(std::size_t j) {
    if (prev_[j] != kNil) next_[prev_[j]] = next_[j]; else head_ = next_[j];
    if (next_[j] != kNil) prev_[next_[j]] = prev_[j]; else tail_ = prev_[j];
    --size_;
  }

  Window window(std::size_t j) const {
    Window w;
    for (std::size_t x = j; x != kNil && w.size < 4; x = next_[x]) {
      w.v[w.size++] = values_[x];
    }
    return w;
  }

  Trace surviving() const {
    Trace out;
    out.reserve(size_);
    for (std::size_t x = head_; x != kNil; x = next_[x]) out.push_back(values_[x]);
    return out;
  }

  std::vector<Index> surviving_positions() const {
    std::vector<Index> out;
    out.reserve(size_);
    for (std::size_t x = head_; x != kNil; x = next_[x]) out.push_back(x + 1);
    return out;
  }

 private:
  std::span<const Space> values_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> prev_;
  std::size_t head_;
  std::size_t tail_;
  std::size_t size_;
};

// One left-to-right pattern pass with the three-step backtrack. Returns the
// number of applications.
std::size_t reduce_linked(LinkedTrace& lt, std::size_t process,
                          std::vector<ReductionEvent>& events,
                          std::size_t& scan_steps) {
  std::size_t applied = 0;
  std::size_t cursor = lt.head();
  while (cursor != kNil) {
    ++scan_steps;
    const auto kind = match_window(lt.window(cursor));
    if (!kind) {
      cursor = lt.next(cursor);
      continue;
    }
    ReductionEvent ev;
    ev.process = process;
    ev.kind = *kind;
    std::size_t victim = lt.next(cursor);
    for (int r = 0; r < removed_count(*kind); ++r) {
      const std::size_t after = lt.next(victim);
      ev.positions.push_back(victim + 1);
      ev.removed.push_back(lt.value(victim));
      lt.erase(victim);
      victim = after;
    }
    events.push_back(std::move(ev));
    ++applied;
    for (int back = 0; back < 3 && lt.prev(cursor) != kNil; ++back) {
      cursor = lt.prev(cursor);
    }
  }
  return applied;
}

ReductionEvent single_removal(std::size_t process, ReductionKind kind,
                              const LinkedTrace& lt, std::size_t node) {
  ReductionEvent ev;
  ev.process = process;
  ev.kind = kind;
  ev.positions = {node + 1};
  ev.removed = {lt.value(node)};
  return ev;
}

// Longest prefix (as a per-end-index flag) that is a monotonic increasing
// zig-zag. Assumes the whole trace already alternates strictly.
std::vector<bool> mizz_prefixes(std::span<const Space> t) {
  const std::size_t m = t.size();
  std::vector<bool> ok(m, false);
  if (m == 0) return ok;
  ok[0] = true;
  std::optional<Space> last_valley, last_peak, max_valley, min_peak;
  auto admit = [&](std::size_t j, bool is_peak) {
    const Space v = t[j];
    if (is_peak) {
      if (last_peak && v <= *last_peak) return false;
      if (max_valley && v <= *max_valley) return false;
      last_peak = v;
      min_peak = min_peak ? std::min(*min_peak, v) : v;
    } else {
      if (last_valley && v >= *last_valley) return false;
      if (min_peak && v >= *min_peak) return false;
      last_valley = v;
      max_valley = max_valley ? std::max(*max_valley, v) : v;
    }
    return true;
  };
  // Roles of the first element depend on its right neighbour.
  auto role_is_peak = [&](std::size_t j) {
    if (j + 1 < m) return t[j] > t[j + 1];
    return t[j] > t[j - 1];
  };
  if (m == 1) return ok;
  if (!admit(0, role_is_peak(0))) return ok;
  for (std::size_t j = 1; j < m; ++j) {
    if (!admit(j, role_is_peak(j))) break;
    ok[j] = true;
  }
  return ok;
}

}  // namespace

std::optional<ReductionKind> match_pattern(std::span<const Space> trace,
                                           Index i) {
  if (i < 1 || i > trace.size()) return std::nullopt;
  Window w;
  for (std::size_t j = i - 1; j < trace.size() && w.size < 4; ++j) {
    w.v[w.size++] = trace[j];
  }
  return match_window(w);
}

Trace apply_pattern(std::span<const Space> trace, Index i, ReductionKind kind) {
  Trace out(trace.begin(), trace.end());
  const int count = removed_count(kind);
  if (i + static_cast<std::size_t>(count) > out.size()) {
    throw Error(ErrorKind::kInvalidInput, "pattern window exceeds trace");
  }
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i),
            out.begin() + static_cast<std::ptrdiff_t>(i) + count);
  return out;
}

PatternReduction reduce_patterns(const Process& process) {
  LinkedTrace lt(process.trace());
  std::vector<ReductionEvent> events;
  std::size_t steps = 0;
  reduce_linked(lt, 0, events, steps);
  return {Process(process.id(), lt.surviving()), std::move(events), steps};
}

StandardizedSet standardize(const ProcessSet& set) {
  StandardizedSet out;
  out.provenance.resize(set.size());
  out.index_map.resize(set.size());
  std::vector<Process> kept;
  for (std::size_t k = 0; k < set.size(); ++k) {
    const Process& p = set[k];
    out.m_start = checked_add(out.m_start, p.front());
    out.m_end = checked_add(out.m_end, p.back());

    LinkedTrace lt(p.trace());
    auto& log = out.provenance[k];
    std::size_t steps = 0;
    // Patterns and peak stripping feed each other; iterate to a fixpoint.
    while (true) {
      out.pattern_applications += reduce_linked(lt, k, log, steps);
      bool changed = false;
      if (lt.size() >= 2 && lt.value(lt.head()) > lt.value(lt.next(lt.head()))) {
        log.push_back(single_removal(k, ReductionKind::kStartPeak, lt, lt.head()));
        lt.erase(lt.head());
        changed = true;
      }
      if (lt.size() >= 2 && lt.value(lt.tail()) > lt.value(lt.prev(lt.tail()))) {
        log.push_back(single_removal(k, ReductionKind::kEndPeak, lt, lt.tail()));
        lt.erase(lt.tail());
        changed = true;
      }
      if (!changed) break;
    }
    out.index_map[k] = lt.surviving_positions();
    if (lt.size() == 1) {
      ReductionEvent ev = single_removal(k, ReductionKind::kOneElement, lt, lt.head());
      out.m_one = checked_add(out.m_one, ev.removed.front());
      log.push_back(std::move(ev));
      continue;
    }
    out.origin.push_back(k);
    kept.emplace_back(p.id(), lt.surviving());
  }
  out.processes = ProcessSet(std::move(kept));
  return out;
}

bool is_zigzag(std::span<const Space> t) {
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    if (t[j] == t[j + 1]) return false;
    if (j + 2 < t.size() && (t[j] < t[j + 1]) == (t[j + 1] < t[j + 2])) {
      return false;
    }
  }
  return true;
}

MidzzShape classify_midzz(std::span<const Space> trace) {
  MidzzShape shape;
  const Extrema ex = find_extrema(trace);
  shape.global_peaks = ex.global_peaks;
  shape.global_valleys = ex.global_valleys;
  const std::size_t m = trace.size();
  if (m == 0 || !is_zigzag(trace)) return shape;

  const std::vector<bool> prefix = mizz_prefixes(trace);
  Trace reversed(trace.rbegin(), trace.rend());
  const std::vector<bool> rev_prefix = mizz_prefixes(reversed);
  // A suffix starting at j is a mdzz iff its mirror image is a mizz.
  auto suffix_mdzz = [&](std::size_t j) { return rev_prefix[m - 1 - j]; };

  if (prefix[m - 1]) {
    shape.classification = Shape::kMizz;
  } else if (suffix_mdzz(0)) {
    shape.classification = Shape::kMdzz;
  } else {
    for (std::size_t j = 0; j < m; ++j) {
      if (prefix[j] && suffix_mdzz(j)) {
        shape.classification = Shape::kMidzz;
        break;
      }
    }
  }
  return shape;
}

std::optional<std::string> standardization_defect(std::span<const Space> t) {
  const std::size_t m = t.size();
  if (m < 3) return "shorter than 3";
  if (!is_zigzag(t)) return "not a zig-zag";
  for (Index i = 1; i <= m; ++i) {
    if (auto kind = match_pattern(t, i)) {
      return "pattern " + std::string(to_string(*kind)) + " matches at " +
             std::to_string(i);
    }
  }
  if (t[0] > t[1]) return "starts with a peak";
  if (t[m - 1] > t[m - 2]) return "ends with a peak";
  const MidzzShape shape = classify_midzz(t);
  if (shape.classification == Shape::kOther) return "not a midzz";
  if (shape.global_peaks.size() >= 2 && shape.global_valleys.size() >= 2) {
    return "two global peaks and two global valleys";
  }
  return std::nullopt;
}

}  // namespace spacesched
