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

// Seeded random instance generators shared by the property suites.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spacesched/trace.hpp"

namespace spacesched::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Trace random_trace(Rng& rng, std::size_t max_len, Space max_val) {
  Trace t(static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_len))));
  for (auto& v : t) v = uniform(rng, 0, max_val);
  return t;
}

inline ProcessSet random_set(Rng& rng, std::size_t max_n, std::size_t max_len,
                             Space max_val) {
  std::vector<Trace> traces(static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_n))));
  for (auto& t : traces) t = random_trace(rng, max_len, max_val);
  return ProcessSet::from_traces(traces);
}

// Appends a process to a set, keeping the generated ids unique.
inline ProcessSet with_extra(const ProcessSet& set, Trace extra) {
  std::vector<Process> ps(set.begin(), set.end());
  ps.emplace_back("Q" + std::to_string(ps.size() + 1), std::move(extra));
  return ProcessSet(std::move(ps));
}

}  // namespace spacesched::testing
