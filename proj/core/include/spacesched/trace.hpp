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

// Process and interleaving model shared by every other component.
//
// A process is the space trace of one thread: a nonempty list of
// non-negative integers. An interleaving of N processes is a list of N-tuples;
// each process holds a 1-based position, every step advances a nonempty subset
// of the unfinished processes by exactly one, the first tuple holds all first
// elements and the last tuple holds all last elements. All indices exposed by
// this library are 1-based.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spacesched/error.hpp"

namespace spacesched {

using Trace = std::vector<Space>;
using Index = std::size_t;  // 1-based position inside a trace

class Process {
 public:
  // Throws Error(kInvalidInput) on an empty trace or a negative value.
  Process(std::string id, Trace trace);

  const std::string& id() const noexcept { return id_; }
  const Trace& trace() const noexcept { return trace_; }
  std::size_t length() const noexcept { return trace_.size(); }
  // 1-based element access.
  Space at(Index i) const { return trace_[i - 1]; }
  Space front() const noexcept { return trace_.front(); }
  Space back() const noexcept { return trace_.back(); }

  friend bool operator==(const Process&, const Process&) = default;

 private:
  std::string id_;
  Trace trace_;
};

Process make_process(std::string id, Trace values);

class ProcessSet {
 public:
  ProcessSet() = default;
  // Throws Error(kInvalidInput) on duplicate ids.
  explicit ProcessSet(std::vector<Process> processes);

  // Convenience: ids "P1".."PN".
  static ProcessSet from_traces(const std::vector<Trace>& traces);

  const std::vector<Process>& processes() const noexcept { return processes_; }
  std::size_t size() const noexcept { return processes_.size(); }
  bool empty() const noexcept { return processes_.empty(); }
  const Process& operator[](std::size_t k) const { return processes_[k]; }
  auto begin() const noexcept { return processes_.begin(); }
  auto end() const noexcept { return processes_.end(); }

  // Total number of trace elements over all processes.
  std::size_t total_length() const noexcept;

  friend bool operator==(const ProcessSet&, const ProcessSet&) = default;

 private:
  std::vector<Process> processes_;
};

struct Interleaving {
  std::vector<std::vector<Space>> steps;
  // Per-step 1-based positions. Empty when only the values are known.
  std::vector<std::vector<Index>> positions;

  std::size_t length() const noexcept { return steps.size(); }

  // Builds the value tuples from a position sequence.
  static Interleaving from_positions(const ProcessSet& set,
                                     std::vector<std::vector<Index>> positions);
};

// Maximum tuple sum. Throws on an empty step list or inconsistent arity.
Space sps(const Interleaving& interleaving);

struct Verdict {
  bool ok = true;
  std::string violation;

  explicit operator bool() const noexcept { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

// Checks that the interleaving is legal for the set. When positions are
// present they are checked directly; otherwise a position sequence consistent
// with the step values is searched for.
Verdict validate_interleaving(const ProcessSet& set,
                              const Interleaving& interleaving);

struct LowerBounds {
  Space sum_of_firsts = 0;
  Space sum_of_lasts = 0;
  Space peak_plus_valleys = 0;

  Space max() const noexcept;
};

LowerBounds lower_bounds(const ProcessSet& set);

struct Extrema {
  std::vector<Index> local_peaks;
  std::vector<Index> local_valleys;
  std::vector<Index> global_valleys;
  std::vector<Index> global_peaks;
};

Extrema find_extrema(std::span<const Space> trace);
inline Extrema find_extrema(const Process& p) { return find_extrema(p.trace()); }

}  // namespace spacesched
