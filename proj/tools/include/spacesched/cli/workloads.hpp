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


// Instance generators, the oracle fuzzer and the scaling benchmark.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spacesched/trace.hpp"

namespace spacesched::cli {

// N processes with lengths in [1, max_len] and values in [0, max_val].
ProcessSet random_problem(std::size_t n, std::size_t max_len, Space max_val,
                          std::uint64_t seed);

// `procs` processes holding `total` elements between them, values up to
// `max_val`. Used for timing.
ProcessSet bench_instance(std::size_t total, std::size_t procs, Space max_val,
                          std::uint64_t seed);

struct FuzzOptions {
  std::size_t cases = 1000;
  std::uint64_t seed = 42;
  std::size_t max_n = 4;
  std::size_t max_len = 6;
  Space max_val = 20;
  std::uint64_t budget = 0;  // 0 selects the oracle default
  // Returns a description of the failure, empty when the case is fine.
  std::function<std::string(const ProcessSet&)> check;
};

struct FuzzOutcome {
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t first_failure = 0;  // case id
  std::string failure;
  ProcessSet reproducer;  // minimized
};

// spoptn against the oracle, plus schedule certification.
std::string check_against_oracle(const ProcessSet& set, std::uint64_t budget);

// Throws Error(kBudgetExceeded) when the bounds admit instances the oracle
// cannot handle.
FuzzOutcome run_fuzz(const FuzzOptions& options);

// Greedy shrinking while `failing` keeps returning a nonempty description.
ProcessSet minimize(ProcessSet set,
                    const std::function<std::string(const ProcessSet&)>& failing);

struct BenchRow {
  std::size_t size = 0;
  std::size_t procs = 0;
  double millis = 0;  // best of the repetitions
  Space spmin = 0;
};

BenchRow time_spoptn(std::size_t size, std::size_t procs, std::uint64_t seed,
                     int repetitions);

// Least-squares slope of log(time) against log(size).
double loglog_slope(const std::vector<BenchRow>& rows);

}  // namespace spacesched::cli
