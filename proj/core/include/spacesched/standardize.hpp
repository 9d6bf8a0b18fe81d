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

// Reduction of processes to standardized (midzz) form.
//
// Five local rewrite patterns remove elements that can never matter for the
// minimal peak: plateaus (M0), monotone middles (M1, M2) and the two
// staircase shapes (M3 downstairs, M4 upstairs). Start and end peaks are
// stripped, and processes that collapse to a single element are folded into a
// constant offset. Every removal is logged with its original positions so a
// schedule over the reduced processes can be expanded back.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spacesched/trace.hpp"

namespace spacesched {

enum class ReductionKind {
  kM0,
  kM1,
  kM2,
  kM3,
  kM4,
  kStartPeak,
  kEndPeak,
  kOneElement,
};

std::string_view to_string(ReductionKind kind);

struct ReductionEvent {
  std::size_t process = 0;  // index into the original ProcessSet
  ReductionKind kind = ReductionKind::kM0;
  // 1-based indices into the original trace of the removed elements, in
  // increasing order, and their values.
  std::vector<Index> positions;
  std::vector<Space> removed;

  Index first() const { return positions.front(); }
  Index last() const { return positions.back(); }
};

// Pattern matching at 1-based index i. At one index the precedence is
// M0, M1, M2, M3, M4.
std::optional<ReductionKind> match_pattern(std::span<const Space> trace,
                                           Index i);

// Removes the elements pattern `kind` designates at index i, without checking
// that it matches. M0-M2 drop a[i+1]; M3/M4 drop a[i+1] and a[i+2].
Trace apply_pattern(std::span<const Space> trace, Index i, ReductionKind kind);

struct PatternReduction {
  Process reduced;
  std::vector<ReductionEvent> events;  // positions refer to the input trace
  std::size_t scan_steps = 0;
};

// Left-to-right scan; after a match the scan resumes three positions earlier.
// The result has no pattern match and keeps the input's first and last value.
PatternReduction reduce_patterns(const Process& process);

struct StandardizedSet {
  ProcessSet processes;  // may be empty
  Space m_start = 0;     // sum of original first elements
  Space m_end = 0;       // sum of original last elements
  Space m_one = 0;       // sum of the collapsed one-element processes
  // Original process index of each standardized process.
  std::vector<std::size_t> origin;
  // Per original process, in application order.
  std::vector<std::vector<ReductionEvent>> provenance;
  // Per original process: standardized index (1-based, offset by one in the
  // vector) to original index. Holds the surviving element for a collapsed
  // process.
  std::vector<std::vector<Index>> index_map;
  std::size_t pattern_applications = 0;
};

StandardizedSet standardize(const ProcessSet& set);

enum class Shape { kMizz, kMdzz, kMidzz, kOther };
std::string_view to_string(Shape shape);

struct MidzzShape {
  Shape classification = Shape::kOther;
  std::vector<Index> global_peaks;
  std::vector<Index> global_valleys;
};

MidzzShape classify_midzz(std::span<const Space> trace);
inline MidzzShape classify_midzz(const Process& p) {
  return classify_midzz(p.trace());
}

// Strict alternation of increases and decreases.
bool is_zigzag(std::span<const Space> trace);

// Empty when the trace satisfies every standardized-process invariant,
// otherwise the first violated one.
std::optional<std::string> standardization_defect(std::span<const Space> trace);

}  // namespace spacesched
