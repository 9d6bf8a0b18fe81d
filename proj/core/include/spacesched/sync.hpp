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

// Synchronization restrictions between processes and an exact solver for
// small constrained instances.
//
// Processes run on a shared global timeline of steps 1..T. tau(P, i) is the
// first step at which P shows its element i. Four basic restrictions relate
// two time points:
//
//   simul(P1, P2, i1, i2)   tau(P1, i1) == tau(P2, i2)
//   before(P1, P2, i1, i2)  tau(P1, i1) <= tau(P2, i2)
//   starts(P1, P2, i)       tau(P1, 1)  == tau(P2, i)
//   ends(P1, P2, i)         tau(P1, m1) == tau(P2, i)
//
// and formulas combine them with and/or/not. A process named as the first
// operand of some `starts` restriction is spawned: it contributes 0 until it
// starts. Likewise the first operand of an `ends` restriction is joined: it
// shows its last element for one step and contributes 0 afterwards. All other
// processes start at step 1 and hold their last element until step T.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spacesched/trace.hpp"

namespace spacesched {

enum class RestrictionKind { kSimul, kStarts, kEnds, kBefore };

std::string_view to_string(RestrictionKind kind);

struct TimePointRef {
  std::string process;
  Index index = 1;
};

struct BasicRestriction {
  RestrictionKind kind = RestrictionKind::kSimul;
  std::string p1;
  std::string p2;
  Index i1 = 1;  // unused by starts/ends
  Index i2 = 1;  // the `i` of starts/ends

  static BasicRestriction simul(std::string a, std::string b, Index ia, Index ib);
  static BasicRestriction before(std::string a, std::string b, Index ia, Index ib);
  static BasicRestriction starts(std::string a, std::string b, Index i);
  static BasicRestriction ends(std::string a, std::string b, Index i);

  friend bool operator==(const BasicRestriction&, const BasicRestriction&) = default;
};

class Formula {
 public:
  enum class Op { kAtom, kAnd, kOr, kNot };

  // The empty conjunction, i.e. true.
  Formula() = default;

  static Formula atom(BasicRestriction r);
  static Formula all_of(std::vector<Formula> children);
  static Formula any_of(std::vector<Formula> children);
  static Formula negate(Formula child);

  Op op() const noexcept { return op_; }
  const BasicRestriction& restriction() const { return atom_; }
  const std::vector<Formula>& children() const noexcept { return children_; }

  // Atoms in depth-first order.
  std::vector<BasicRestriction> atoms() const;
  std::size_t atom_count() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Op op_ = Op::kAnd;
  BasicRestriction atom_;
  std::vector<Formula> children_;
};

struct ConstrainedProblem {
  ProcessSet processes;
  Formula formula;

  // Throws Error(kInvalidInput, "unknown time point") on a dangling reference.
  void validate() const;

  friend bool operator==(const ConstrainedProblem&, const ConstrainedProblem&) = default;
};

// Position 0 means not started yet; length+1 means finished.
class TimedSchedule {
 public:
  TimedSchedule() = default;
  TimedSchedule(ProcessSet processes, std::vector<std::vector<Index>> positions);

  const ProcessSet& processes() const noexcept { return processes_; }
  const std::vector<std::vector<Index>>& positions() const noexcept {
    return positions_;
  }
  std::size_t horizon() const noexcept { return positions_.size(); }

  // 1-based steps; nullopt if the index is never shown.
  std::optional<std::size_t> tau(std::size_t process, Index index) const;
  std::optional<std::size_t> start_step(std::size_t process) const {
    return tau(process, 1);
  }
  Space value(std::size_t step, std::size_t process) const;
  Space step_sum(std::size_t step) const;
  Space peak() const;

  // Positions advance by 0 or 1 per step and every process shows every index.
  Verdict check() const;

 private:
  ProcessSet processes_;
  std::vector<std::vector<Index>> positions_;
};

// Throws Error(kInvalidInput, "unknown time point") for references the
// schedule cannot resolve.
bool eval_formula(const Formula& formula, const TimedSchedule& schedule);

inline constexpr std::uint64_t kDefaultConstrainedBudget = 1'000'000;

struct ConstrainedSolution {
  Space spmin = 0;
  TimedSchedule schedule;
  std::uint64_t states = 0;
};

// Exact bottleneck search over (positions, restriction status). Throws
// Error(kBudgetExceeded) past `budget` states and Error(kUnsatisfiable) when
// no schedule satisfies the formula.
ConstrainedSolution solve_constrained(
    const ConstrainedProblem& problem,
    std::uint64_t budget = kDefaultConstrainedBudget);

// P0 = [0,0,0,0], Pi = [0,a_i,0,0], and for each i
// simul(P0,Pi,2,3) or simul(P0,Pi,3,2). The optimum is the best 2-partition.
ConstrainedProblem encode_partition(const std::vector<Space>& values);

// min over 2-partitions of the larger half, by subset enumeration.
Space partition_oracle(const std::vector<Space>& values);

// Producer P1 and consumer P2 of n unit steps, items Q1..Qn = [1,0].
ConstrainedProblem gen_producer_consumer(std::size_t n);

}  // namespace spacesched
