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

// Minimal peak space of independent processes in O((N + n) log N).
//
// After standardization every process is a midzz: valleys fall towards a
// global valley and rise after it. A scan keeps the sum S of the current
// valleys and a min-heap of (next peak - current valley, process). Popping the
// smallest step, the running maximum M absorbs S + step and S moves to the
// next valley. The left scan runs every process up to its rightmost global
// valley; the right scan is the same sweep on the reversed traces. spmin is
// max(M_left + M_one, M_right + M_one, M_start, M_end).

#pragma once

#include <vector>

#include "spacesched/standardize.hpp"
#include "spacesched/trace.hpp"

namespace spacesched {

enum class Direction { kLeftToRight, kRightToLeft };

// Index at which a scan stops: the rightmost global valley of the trace as
// seen in the scan direction. For kRightToLeft the result is in reversed
// coordinates.
Index end_index(std::span<const Space> trace, Direction dir);
inline Index end_index(const Process& p, Direction dir) {
  return end_index(p.trace(), dir);
}

struct ScanEvent {
  std::size_t process = 0;  // index into the standardized set
  Index from = 0;           // valley before the crossed peak, scan coordinates
  Index to = 0;             // from + 2
};

struct ScanResult {
  Space m = 0;
  Space s_final = 0;
  std::vector<ScanEvent> events;
  std::vector<Space> m_trajectory;  // initial M, then M after each event
  std::vector<Space> s_trajectory;  // initial S, then S after each event
};

// Throws Error(kNotStandardized) if any process violates the standardized
// invariants.
ScanResult scan(const StandardizedSet& std_set, Direction dir);

struct SpminResult {
  Space spmin = 0;
  Space m_left = 0;
  Space m_right = 0;
  Space m_start = 0;
  Space m_end = 0;
  Space m_one = 0;
  ScanResult left;
  ScanResult right;
  StandardizedSet standardized;
};

SpminResult spoptn(const ProcessSet& set);

// A certified optimal interleaving of the original processes. Throws
// Error(kInternal) if the construction fails validation or misses spmin.
Interleaving reconstruct_schedule(const ProcessSet& set,
                                  const SpminResult& result);

// Every unfinished process advances at every step.
Interleaving eager_schedule(const ProcessSet& set);

}  // namespace spacesched
