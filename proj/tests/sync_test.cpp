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


#include <optional>

#include "doctest.h"
#include "generators.hpp"
#include "spacesched/spoptn.hpp"
#include "spacesched/sync.hpp"

namespace spacesched {
namespace {

using R = BasicRestriction;

// The producer-consumer start drawn for three items: both producers show
// index i at step i, Q_i starts at step i and shows its 0 one step later.
TimedSchedule depicted_prodcons(const ProcessSet& set) {
  std::vector<std::vector<Index>> rows;
  for (std::size_t t = 1; t <= 4; ++t) {
    std::vector<Index> row{std::min<Index>(t, 3), std::min<Index>(t, 3)};
    for (std::size_t i = 1; i <= 3; ++i) row.push_back(t < i ? 0 : t == i ? 1 : 2);
    rows.push_back(row);
  }
  return TimedSchedule(set, rows);
}

std::vector<std::vector<Index>> lockstep(std::size_t steps, std::size_t n) {
  std::vector<std::vector<Index>> rows;
  for (std::size_t t = 1; t <= steps; ++t) rows.push_back(std::vector<Index>(n, t));
  return rows;
}

// Literal enumeration of every timed schedule under the model's move rules,
// judged by eval_formula on the finished schedule. Exponential; tiny inputs.
struct BruteForce {
  const ConstrainedProblem& p;
  std::vector<bool> spawned, joined;
  std::vector<std::vector<Index>> rows;
  std::optional<Space> best;

  explicit BruteForce(const ConstrainedProblem& problem) : p(problem) {
    for (const auto& proc : p.processes) {
      bool s = false, j = false;
      for (const auto& r : p.formula.atoms()) {
        s |= r.kind == RestrictionKind::kStarts && r.p1 == proc.id();
        j |= r.kind == RestrictionKind::kEnds && r.p1 == proc.id();
      }
      spawned.push_back(s);
      joined.push_back(j);
    }
  }

  bool done(const std::vector<Index>& pos) const {
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const Index m = p.processes[k].length();
      if (pos[k] != (joined[k] ? m + 1 : m)) return false;
    }
    return true;
  }

  void step(const std::vector<Index>& pos, bool first) {
    if (!first && done(pos)) {
      const TimedSchedule s(p.processes, rows);
      if (eval_formula(p.formula, s)) best = std::min(best.value_or(s.peak()), s.peak());
      return;
    }
    const std::size_t n = pos.size();
    std::vector<std::vector<Index>> opts(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Index m = p.processes[k].length();
      const Index q = pos[k];
      if (q == 0) {
        opts[k] = spawned[k] ? std::vector<Index>{0, 1} : std::vector<Index>{1};
      } else if (q < m) {
        opts[k] = {q, q + 1};
      } else if (q == m && joined[k]) {
        opts[k] = {m + 1};
      } else {
        opts[k] = {q};
      }
    }
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      std::vector<Index> next(n);
      for (std::size_t k = 0; k < n; ++k) next[k] = opts[k][pick[k]];
      if (next != pos) {
        rows.push_back(next);
        step(next, false);
        rows.pop_back();
      }
      std::size_t k = 0;
      while (k < n && ++pick[k] == opts[k].size()) pick[k++] = 0;
      if (k == n) break;
    }
  }

  std::optional<Space> solve() {
    step(std::vector<Index>(p.processes.size(), 0), true);
    return best;
  }
};

Formula random_formula(testing::Rng& rng, const ProcessSet& set, int depth) {
  auto id = [&] {
    return set[static_cast<std::size_t>(
                   testing::uniform(rng, 0, static_cast<std::int64_t>(set.size()) - 1))]
        .id();
  };
  auto index_in = [&](const std::string& pid) {
    for (const auto& q : set) {
      if (q.id() == pid) return static_cast<Index>(
          testing::uniform(rng, 1, static_cast<std::int64_t>(q.length())));
    }
    return Index{1};
  };
  const auto roll = testing::uniform(rng, 0, depth > 0 ? 6 : 3);
  if (roll <= 3) {
    const std::string a = id(), b = id();
    switch (roll) {
      case 0: return Formula::atom(R::simul(a, b, index_in(a), index_in(b)));
      case 1: return Formula::atom(R::before(a, b, index_in(a), index_in(b)));
      case 2: return Formula::atom(R::starts(a, b, index_in(b)));
      default: return Formula::atom(R::ends(a, b, index_in(b)));
    }
  }
  if (roll == 6) return Formula::negate(random_formula(rng, set, depth - 1));
  std::vector<Formula> kids;
  for (auto c = testing::uniform(rng, 1, 3); c > 0; --c) {
    kids.push_back(random_formula(rng, set, depth - 1));
  }
  return roll == 4 ? Formula::all_of(std::move(kids)) : Formula::any_of(std::move(kids));
}

Space solve(const ConstrainedProblem& p) { return solve_constrained(p).spmin; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInternal;
}

TEST_SUITE("sync") {

TEST_CASE("formula construction") {
  const Formula f = Formula::all_of({Formula::atom(R::simul("A", "B", 1, 2)),
                                     Formula::any_of({Formula::atom(R::before("A", "B", 2, 2)),
                                                      Formula::negate(Formula::atom(
                                                          R::starts("B", "A", 2)))})});
  CHECK(f.atom_count() == 3);
  CHECK(f.atoms()[2].kind == RestrictionKind::kStarts);
  CHECK(f.atoms()[2].i2 == 2);
  CHECK(Formula().atom_count() == 0);
  CHECK(Formula().op() == Formula::Op::kAnd);
}

TEST_CASE("eval_formula basic atoms") {
  const ProcessSet set = ProcessSet::from_traces({{1, 2, 3}, {4, 5, 6}});
  const TimedSchedule same(set, lockstep(3, 2));
  CHECK(eval_formula(Formula::atom(R::before("P1", "P2", 1, 1)), same));
  CHECK(eval_formula(Formula::atom(R::simul("P1", "P2", 2, 2)), same));
  CHECK(eval_formula(Formula::atom(R::ends("P1", "P2", 3)), same));
  CHECK(eval_formula(Formula(), same));

  const TimedSchedule lag(set, {{1, 1}, {2, 1}, {3, 2}, {3, 3}});
  CHECK(lag.check());
  CHECK_FALSE(eval_formula(Formula::atom(R::simul("P1", "P2", 2, 2)), lag));
  CHECK(eval_formula(Formula::atom(R::before("P1", "P2", 2, 2)), lag));
  CHECK_FALSE(eval_formula(Formula::atom(R::before("P2", "P1", 2, 2)), lag));
  CHECK(eval_formula(Formula::negate(Formula::atom(R::simul("P1", "P2", 2, 2))), lag));
  CHECK(lag.tau(1, 2) == 3u);
}

TEST_CASE("eval_formula rejects dangling references") {
  const ProcessSet set = ProcessSet::from_traces({{1, 2}});
  const TimedSchedule s(set, lockstep(2, 1));
  CHECK_THROWS_WITH(eval_formula(Formula::atom(R::simul("P1", "X", 1, 1)), s),
                    "unknown time point");
  CHECK_THROWS_WITH(eval_formula(Formula::atom(R::simul("P1", "P1", 1, 3)), s),
                    "unknown time point");
  const ConstrainedProblem bad{set, Formula::atom(R::before("P1", "P9", 1, 1))};
  CHECK_THROWS_WITH(bad.validate(), "unknown time point");
}

TEST_CASE("timed schedule checks") {
  const ProcessSet set = ProcessSet::from_traces({{1, 2, 3}});
  CHECK(TimedSchedule(set, {{1}, {2}, {3}}).check());
  CHECK_FALSE(TimedSchedule(set, {{1}, {3}}).check());
  CHECK_FALSE(TimedSchedule(set, {{1}, {2}}).check());
  const TimedSchedule late(set, {{0}, {1}, {2}, {3}, {4}});
  CHECK(late.check());
  CHECK(late.value(1, 0) == 0);
  CHECK(late.value(5, 0) == 0);
  CHECK(late.start_step(0) == 2u);
  CHECK(late.peak() == 3);
}

TEST_CASE("producer-consumer instance shape") {
  const ConstrainedProblem p3 = gen_producer_consumer(3);
  CHECK(p3.processes.size() == 5);
  CHECK(p3.formula.atom_count() == 8);
  const ConstrainedProblem p1 = gen_producer_consumer(1);
  CHECK(p1.processes.size() == 3);
  CHECK(p1.formula.atom_count() == 2);
  CHECK_THROWS_AS(gen_producer_consumer(0), Error);
}

TEST_CASE("the drawn producer-consumer schedule satisfies its constraints") {
  const ConstrainedProblem p = gen_producer_consumer(3);
  const TimedSchedule s = depicted_prodcons(p.processes);
  CHECK(s.check());
  CHECK(eval_formula(p.formula, s));
  CHECK(s.peak() == 3);
  for (std::size_t i = 1; i <= 3; ++i) {
    CHECK(s.tau(0, i) == i);
    CHECK(s.tau(1 + i, 1) == i);
    CHECK(s.tau(1 + i, 2) == i + 1);
  }
}

TEST_CASE("producer-consumer needs three units") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const ConstrainedProblem p = gen_producer_consumer(n);
    const ConstrainedSolution sol = solve_constrained(p);
    CHECK(sol.spmin == 3);
    CHECK(sol.schedule.check());
    CHECK(eval_formula(p.formula, sol.schedule));
    CHECK(sol.schedule.peak() == 3);
  }
}

TEST_CASE("partition encoding") {
  const ConstrainedProblem p = encode_partition({1, 2, 3});
  CHECK(p.processes.size() == 4);
  CHECK(p.processes[0].trace() == Trace{0, 0, 0, 0});
  CHECK(p.processes[2].trace() == Trace{0, 2, 0, 0});
  REQUIRE(p.formula.children().size() == 3);
  for (const auto& clause : p.formula.children()) {
    CHECK(clause.op() == Formula::Op::kOr);
    CHECK(clause.children().size() == 2);
  }
  CHECK(solve({p}) == 3);
  CHECK(solve(encode_partition({1})) == 1);
  CHECK(solve(encode_partition({3, 1, 1, 2, 2, 1})) == 5);
  CHECK_THROWS_AS(encode_partition({}), Error);
  CHECK_THROWS_AS(encode_partition({1, 0}), Error);
}

TEST_CASE("partition oracle") {
  CHECK(partition_oracle({1, 2, 3}) == 3);
  CHECK(partition_oracle({5}) == 5);
  CHECK(partition_oracle({2, 2}) == 2);
  CHECK(partition_oracle({3, 1, 1, 2, 2, 1}) == 5);
  CHECK_THROWS_AS(partition_oracle({}), Error);
  CHECK_THROWS_AS(partition_oracle(std::vector<Space>(25, 1)), Error);
}

TEST_CASE("implied constraints leave the unconstrained optimum") {
  const ProcessSet set = ProcessSet::from_traces({{1, 7, 3}, {2, 10, 4}});
  const ConstrainedProblem p{set, Formula::all_of({Formula::atom(R::simul("P1", "P2", 1, 1))})};
  CHECK(solve(p) == spoptn(set).spmin);
}

TEST_CASE("constraints can raise the optimum") {
  const ProcessSet set = ProcessSet::from_traces({{1, 7, 3}, {2, 10, 4}});
  const ConstrainedProblem p{set, Formula::atom(R::simul("P1", "P2", 2, 2))};
  CHECK(solve(p) == 17);
}

TEST_CASE("errors: unsatisfiable and budget") {
  const ProcessSet set = ProcessSet::from_traces({{1, 2, 3}, {4, 5, 6}});
  const ConstrainedProblem unsat{
      set, Formula::all_of({Formula::atom(R::before("P1", "P2", 3, 1)),
                            Formula::atom(R::before("P2", "P1", 3, 1))})};
  CHECK(kind_of([&] { solve_constrained(unsat); }) == ErrorKind::kUnsatisfiable);
  CHECK_THROWS_WITH(solve_constrained(unsat), "no permitted schedule");

  const ConstrainedProblem big = encode_partition({1, 2, 3, 4, 5, 6});
  CHECK(kind_of([&] { solve_constrained(big, 10); }) == ErrorKind::kBudgetExceeded);
  CHECK_THROWS_WITH(solve_constrained(big, 10), "constrained search too large");
}

TEST_CASE("property: the partition reduction matches the subset oracle") {
  testing::Rng rng(61);
  for (int c = 0; c < 60; ++c) {
    std::vector<Space> a(static_cast<std::size_t>(testing::uniform(rng, 1, 7)));
    for (auto& v : a) v = testing::uniform(rng, 1, 12);
    CAPTURE(a.size());
    const ConstrainedProblem p = encode_partition(a);
    const ConstrainedSolution sol = solve_constrained(p);
    CHECK(sol.spmin == partition_oracle(a));
    CHECK(eval_formula(p.formula, sol.schedule));
    CHECK(sol.schedule.peak() == sol.spmin);
  }
}

TEST_CASE("property: the empty formula reproduces spoptn") {
  testing::Rng rng(62);
  for (int c = 0; c < 200; ++c) {
    const ProcessSet set = testing::random_set(rng, 3, 5, 15);
    const ConstrainedSolution sol = solve_constrained({set, Formula()});
    CHECK(sol.spmin == spoptn(set).spmin);
    CHECK(sol.schedule.check());
  }
}

TEST_CASE("property: the solver agrees with literal schedule enumeration") {
  testing::Rng rng(63);
  int sat = 0, unsat = 0;
  for (int c = 0; c < 400; ++c) {
    const bool three = c % 4 == 0;
    const ProcessSet set = three ? testing::random_set(rng, 3, 2, 5)
                                 : testing::random_set(rng, 2, 3, 5);
    const ConstrainedProblem p{set, random_formula(rng, set, 2)};
    const std::optional<Space> expect = BruteForce(p).solve();
    if (expect) {
      ++sat;
      const ConstrainedSolution sol = solve_constrained(p);
      CHECK(sol.spmin == *expect);
      CHECK(sol.schedule.check());
      CHECK(eval_formula(p.formula, sol.schedule));
      CHECK(sol.schedule.peak() == sol.spmin);
    } else {
      ++unsat;
      CHECK(kind_of([&] { solve_constrained(p); }) == ErrorKind::kUnsatisfiable);
    }
  }
  CHECK(sat > 50);
  CHECK(unsat > 10);
}

}  // TEST_SUITE

}  // namespace
}  // namespace spacesched
