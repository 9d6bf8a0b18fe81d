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

// Exact reference solvers. Both are exponential and only meant to certify
// the fast algorithm on small inputs.

#pragma once

#include <cstdint>

#include "spacesched/trace.hpp"

namespace spacesched {

inline constexpr std::uint64_t kDefaultOracleBudget = 2'000'000;

// Minimax path search over position tuples. Every edge advances a nonempty
// subset of processes. Throws Error(kBudgetExceeded) when the product of the
// trace lengths exceeds `budget`.
Space oracle_spmin(const ProcessSet& set,
                   std::uint64_t budget = kDefaultOracleBudget);

// An interleaving achieving oracle_spmin.
Interleaving oracle_schedule(const ProcessSet& set,
                             std::uint64_t budget = kDefaultOracleBudget);

// Minimum sps over every interleaving produced literally by the
// nondeterministic construction. `limit` caps the number of complete
// interleavings visited.
Space enumerate_spmin(const ProcessSet& set, std::uint64_t limit = 10'000'000);

}  // namespace spacesched
