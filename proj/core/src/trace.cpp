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

#include "spacesched/trace.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace spacesched {

Process::Process(std::string id, Trace trace)
    : id_(std::move(id)), trace_(std::move(trace)) {
  if (trace_.empty()) {
    throw Error(ErrorKind::kInvalidInput, "empty trace");
  }
  for (Space v : trace_) {
    if (v < 0) throw Error(ErrorKind::kInvalidInput, "negative space value");
  }
}

Process make_process(std::string id, Trace values) {
  return Process(std::move(id), std::move(values));
}

ProcessSet::ProcessSet(std::vector<Process> processes)
    : processes_(std::move(processes)) {
  std::unordered_set<std::string> seen;
  for (const auto& p : processes_) {
    if (!seen.insert(p.id()).second) {
      throw Error(ErrorKind::kInvalidInput, "duplicate process id " + p.id());
    }
  }
}

ProcessSet ProcessSet::from_traces(const std::vector<Trace>& traces) {
  std::vector<Process> ps;
  ps.reserve(traces.size());
  for (std::size_t k = 0; k < traces.size(); ++k) {
    ps.emplace_back("P" + std::to_string(k + 1), traces[k]);
  }
  return ProcessSet(std::move(ps));
}

std::size_t ProcessSet::total_length() const noexcept {
  std::size_t n = 0;
  for (const auto& p : processes_) n += p.length();
  return n;
}

Interleaving Interleaving::from_positions(
    const ProcessSet& set, std::vector<std::vector<Index>> positions) {
  Interleaving out;
  out.steps.reserve(positions.size());
  for (const auto& pos : positions) {
    std::vector<Space> tuple(pos.size());
    for (std::size_t k = 0; k < pos.size(); ++k) tuple[k] = set[k].at(pos[k]);
    out.steps.push_back(std::move(tuple));
  }
  out.positions = std::move(positions);
  return out;
}

Space sps(const Interleaving& interleaving) {
  if (interleaving.steps.empty()) {
    throw Error(ErrorKind::kInvalidInput, "empty interleaving");
  }
  const std::size_t arity = interleaving.steps.front().size();
  Space best = 0;
  for (const auto& tuple : interleaving.steps) {
    if (tuple.size() != arity) {
      throw Error(ErrorKind::kInvalidInput, "inconsistent tuple arity");
    }
    Space sum = 0;
    for (Space v : tuple) sum = checked_add(sum, v);
    best = std::max(best, sum);
  }
  return best;
}

namespace {

Verdict check_positions(const ProcessSet& set, const Interleaving& s) {
  const std::size_t n = set.size();
  if (s.positions.size() != s.steps.size()) {
    return Verdict::fail("positions and steps differ in length");
  }
  for (std::size_t t = 0; t < s.steps.size(); ++t) {
    const auto& pos = s.positions[t];
    const auto& val = s.steps[t];
    if (pos.size() != n || val.size() != n) {
      return Verdict::fail("tuple arity differs from process count at step " +
                           std::to_string(t + 1));
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (pos[k] < 1 || pos[k] > set[k].length()) {
        return Verdict::fail("position out of range in process " +
                             set[k].id() + " at step " + std::to_string(t + 1));
      }
      if (set[k].at(pos[k]) != val[k]) {
        return Verdict::fail("value mismatch in process " + set[k].id() +
                             " at step " + std::to_string(t + 1));
      }
    }
    if (t == 0) {
      for (std::size_t k = 0; k < n; ++k) {
        if (pos[k] != 1) {
          return Verdict::fail("first step does not start process " +
                               set[k].id() + " at index 1");
        }
      }
      continue;
    }
    const auto& prev = s.positions[t - 1];
    bool moved = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (pos[k] < prev[k]) {
        return Verdict::fail("process " + set[k].id() + " moves backwards");
      }
      if (pos[k] > prev[k] + 1) {
        return Verdict::fail("skipped index in process " + set[k].id());
      }
      moved = moved || pos[k] == prev[k] + 1;
    }
    if (!moved) {
      return Verdict::fail("step " + std::to_string(t + 1) +
                           " advances no process");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (s.positions.back()[k] != set[k].length()) {
      return Verdict::fail("process " + set[k].id() + " does not finish");
    }
  }
  return Verdict::pass();
}

// Positions of process k that are consistent with the observed values and can
// still reach the final index. feasible[t] is sorted.
Verdict feasible_positions(const Process& p, std::size_t k,
                           const std::vector<std::vector<Space>>& steps,
                           std::vector<std::vector<Index>>& feasible) {
  const std::size_t len = steps.size();
  std::vector<std::vector<Index>> reach(len);
  if (p.at(1) != steps[0][k]) {
    return Verdict::fail("first step does not start process " + p.id() +
                         " at index 1");
  }
  reach[0] = {1};
  for (std::size_t t = 1; t < len; ++t) {
    const Space v = steps[t][k];
    for (Index q : reach[t - 1]) {
      for (Index cand : {q, q + 1}) {
        if (cand <= p.length() && p.at(cand) == v &&
            (reach[t].empty() || reach[t].back() < cand)) {
          reach[t].push_back(cand);
        }
      }
    }
    if (reach[t].empty()) {
      const Index furthest = reach[t - 1].back();
      for (Index q = furthest + 2; q <= p.length(); ++q) {
        if (p.at(q) == v) {
          return Verdict::fail("skipped index in process " + p.id());
        }
      }
      return Verdict::fail("value mismatch in process " + p.id() +
                           " at step " + std::to_string(t + 1));
    }
  }
  if (reach[len - 1].back() != p.length()) {
    return Verdict::fail("process " + p.id() + " does not finish");
  }
  // Backward pass keeps only positions that can still finish.
  feasible.assign(len, {});
  feasible[len - 1] = {p.length()};
  for (std::size_t t = len - 1; t-- > 0;) {
    for (Index q : reach[t]) {
      const auto& next = feasible[t + 1];
      if (std::binary_search(next.begin(), next.end(), q) ||
          std::binary_search(next.begin(), next.end(), q + 1)) {
        feasible[t].push_back(q);
      }
    }
  }
  return Verdict::pass();
}

struct StateHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Index x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

Verdict infer_positions(const ProcessSet& set, const Interleaving& s) {
  const std::size_t n = set.size();
  for (std::size_t t = 0; t < s.steps.size(); ++t) {
    if (s.steps[t].size() != n) {
      return Verdict::fail("tuple arity differs from process count at step " +
                           std::to_string(t + 1));
    }
  }
  std::vector<std::vector<std::vector<Index>>> feasible(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (auto v = feasible_positions(set[k], k, s.steps, feasible[k]); !v) {
      return v;
    }
  }
  // Joint search: each step must advance at least one process.
  const std::size_t len = s.steps.size();
  std::vector<std::unordered_set<std::vector<Index>, StateHash>> dead(len);
  std::function<bool(std::size_t, const std::vector<Index>&)> extend =
      [&](std::size_t t, const std::vector<Index>& pos) -> bool {
    if (t + 1 == len) return true;
    if (dead[t].count(pos)) return false;
    std::vector<std::vector<Index>> options(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& next = feasible[k][t + 1];
      for (Index cand : {pos[k], pos[k] + 1}) {
        if (std::binary_search(next.begin(), next.end(), cand)) {
          options[k].push_back(cand);
        }
      }
      if (options[k].empty()) {
        dead[t].insert(pos);
        return false;
      }
    }
    std::vector<std::size_t> choice(n, 0);
    std::vector<Index> succ(n);
    while (true) {
      bool moved = false;
      for (std::size_t k = 0; k < n; ++k) {
        succ[k] = options[k][choice[k]];
        moved = moved || succ[k] != pos[k];
      }
      if (moved && extend(t + 1, succ)) return true;
      std::size_t k = 0;
      while (k < n && ++choice[k] == options[k].size()) choice[k++] = 0;
      if (k == n) break;
    }
    dead[t].insert(pos);
    return false;
  };
  if (!extend(0, std::vector<Index>(n, 1))) {
    return Verdict::fail("no position sequence advances a process at every step");
  }
  return Verdict::pass();
}

}  // namespace

Verdict validate_interleaving(const ProcessSet& set,
                              const Interleaving& interleaving) {
  if (interleaving.steps.empty()) return Verdict::fail("empty interleaving");
  if (!interleaving.positions.empty()) return check_positions(set, interleaving);
  return infer_positions(set, interleaving);
}

Space LowerBounds::max() const noexcept {
  return std::max({sum_of_firsts, sum_of_lasts, peak_plus_valleys});
}

LowerBounds lower_bounds(const ProcessSet& set) {
  LowerBounds b;
  Space sum_of_mins = 0;
  std::vector<Space> mins, maxs;
  for (const auto& p : set) {
    b.sum_of_firsts = checked_add(b.sum_of_firsts, p.front());
    b.sum_of_lasts = checked_add(b.sum_of_lasts, p.back());
    const auto [lo, hi] = std::minmax_element(p.trace().begin(), p.trace().end());
    mins.push_back(*lo);
    maxs.push_back(*hi);
    sum_of_mins = checked_add(sum_of_mins, *lo);
  }
  for (std::size_t k = 0; k < set.size(); ++k) {
    const Space bound = checked_add(sum_of_mins - mins[k], maxs[k]);
    b.peak_plus_valleys = std::max(b.peak_plus_valleys, bound);
  }
  return b;
}

Extrema find_extrema(std::span<const Space> trace) {
  Extrema e;
  const std::size_t m = trace.size();
  if (m == 0) return e;
  const auto [lo, hi] = std::minmax_element(trace.begin(), trace.end());
  for (std::size_t j = 0; j < m; ++j) {
    const bool left_ok_peak = j == 0 || trace[j] >= trace[j - 1];
    const bool right_ok_peak = j + 1 == m || trace[j] >= trace[j + 1];
    const bool left_ok_valley = j == 0 || trace[j] <= trace[j - 1];
    const bool right_ok_valley = j + 1 == m || trace[j] <= trace[j + 1];
    if (left_ok_peak && right_ok_peak) e.local_peaks.push_back(j + 1);
    if (left_ok_valley && right_ok_valley) e.local_valleys.push_back(j + 1);
    if (trace[j] == *lo) e.global_valleys.push_back(j + 1);
    if (trace[j] == *hi) e.global_peaks.push_back(j + 1);
  }
  return e;
}

}  // namespace spacesched
