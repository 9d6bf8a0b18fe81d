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


#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "spacesched/spoptn.hpp"
#include "spacesched/trace.hpp"

namespace spacesched {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInternal;
}

Interleaving values_only(std::vector<std::vector<Space>> steps) {
  Interleaving il;
  il.steps = std::move(steps);
  return il;
}

const ProcessSet kTwo = ProcessSet::from_traces({{1, 7, 3}, {2, 10, 4}});

TEST_SUITE("trace") {

TEST_CASE("make_process accepts nonempty non-negative traces") {
  const Process p = make_process("P1", {1, 7, 3});
  CHECK(p.length() == 3);
  CHECK(p.at(2) == 7);
  CHECK(make_process("Z", {0}).length() == 1);
}

TEST_CASE("make_process rejects empty and negative traces") {
  CHECK_THROWS_WITH(make_process("B", {}), "empty trace");
  CHECK_THROWS_WITH(make_process("B", {1, -2}), "negative space value");
  CHECK(kind_of([] { make_process("B", {}); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("process sets need distinct ids") {
  CHECK_THROWS_WITH(ProcessSet({make_process("A", {1}), make_process("A", {2})}),
                    "duplicate process id A");
  CHECK(ProcessSet::from_traces({{1}, {2}})[1].id() == "P2");
  CHECK(kTwo.total_length() == 6);
}

TEST_CASE("sps is the largest tuple sum") {
  CHECK(sps(values_only({{1, 2}, {1, 10}, {1, 4}, {7, 4}, {3, 4}})) == 11);
  CHECK(sps(values_only({{1, 2}, {7, 10}, {3, 4}})) == 17);
  CHECK(sps(values_only({{0, 0}, {0, 0}})) == 0);
  CHECK_THROWS_WITH(sps(values_only({})), "empty interleaving");
  CHECK_THROWS_WITH(sps(values_only({{1, 2}, {3}})), "inconsistent tuple arity");
}

TEST_CASE("sps reports overflow instead of wrapping") {
  const Space big = std::numeric_limits<Space>::max();
  CHECK(kind_of([&] { sps(values_only({{big, 1}})); }) == ErrorKind::kOverflow);
}

TEST_CASE("validate_interleaving on value tuples") {
  CHECK(validate_interleaving(kTwo, values_only({{1, 2}, {1, 10}, {1, 4}, {7, 4}, {3, 4}})));
  const Verdict skip = validate_interleaving(kTwo, values_only({{1, 2}, {3, 4}}));
  CHECK_FALSE(skip);
  CHECK(skip.violation == "skipped index in process P1");
  CHECK(validate_interleaving(ProcessSet::from_traces({{5}}), values_only({{5}})));
}

TEST_CASE("validate_interleaving rejects stalled steps and early stops") {
  CHECK_FALSE(validate_interleaving(kTwo, values_only({{1, 2}, {1, 2}, {7, 10}, {3, 4}})));
  CHECK_FALSE(validate_interleaving(kTwo, values_only({{1, 2}, {7, 10}})));
  CHECK_FALSE(validate_interleaving(kTwo, values_only({{2, 1}, {7, 10}, {3, 4}})));
  CHECK_FALSE(validate_interleaving(kTwo, values_only({{1, 2, 0}})));
}

TEST_CASE("validate_interleaving with explicit positions") {
  Interleaving ok = Interleaving::from_positions(kTwo, {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}});
  CHECK(validate_interleaving(kTwo, ok));
  CHECK(sps(ok) == 11);

  Interleaving back = Interleaving::from_positions(kTwo, {{1, 1}, {2, 2}, {1, 3}, {3, 3}});
  const Verdict v = validate_interleaving(kTwo, back);
  CHECK_FALSE(v);
  CHECK(v.violation == "process P1 moves backwards");

  Interleaving idle = Interleaving::from_positions(kTwo, {{1, 1}, {1, 1}, {2, 2}, {3, 3}});
  CHECK_FALSE(validate_interleaving(kTwo, idle));

  Interleaving tampered = ok;
  tampered.steps[2][1] = 0;
  CHECK(validate_interleaving(kTwo, tampered).violation.starts_with("value mismatch"));
}

TEST_CASE("lower bounds") {
  const LowerBounds lb = lower_bounds(kTwo);
  CHECK(lb.sum_of_firsts == 3);
  CHECK(lb.sum_of_lasts == 7);
  CHECK(lb.peak_plus_valleys == 11);
  const LowerBounds one = lower_bounds(ProcessSet::from_traces({{5}}));
  CHECK(one.sum_of_firsts == 5);
  CHECK(one.sum_of_lasts == 5);
  CHECK(one.peak_plus_valleys == 5);
  const ProcessSet ex = ProcessSet::from_traces(
      {{10, 1, 12, 5, 7, 1}, {3, 11, 2, 10, 3}, {1, 2, 3, 4, 3, 2, 1}});
  CHECK(lower_bounds(ex).peak_plus_valleys == 15);
  CHECK(lower_bounds(ex).max() == 15);
}

TEST_CASE("find_extrema") {
  const Extrema e = find_extrema(Trace{1, 7, 3});
  CHECK(e.local_peaks == std::vector<Index>{2});
  CHECK(e.local_valleys == std::vector<Index>{1, 3});
  CHECK(e.global_valleys == std::vector<Index>{1});
  CHECK(e.global_peaks == std::vector<Index>{2});

  CHECK(find_extrema(Trace{1, 4, 1}).global_valleys == std::vector<Index>{1, 3});

  const Extrema flat = find_extrema(Trace{4, 4, 4});
  CHECK(flat.local_peaks == std::vector<Index>{1, 2, 3});
  CHECK(flat.local_valleys == std::vector<Index>{1, 2, 3});

  const Extrema single = find_extrema(Trace{9});
  CHECK(single.local_peaks == std::vector<Index>{1});
  CHECK(single.global_valleys == std::vector<Index>{1});
}

TEST_CASE("interleaving lengths of single-step and eager schedules") {
  const ProcessSet set = ProcessSet::from_traces({{1, 2, 3}, {9}, {4, 4}});
  const Interleaving eager = eager_schedule(set);
  CHECK(eager.length() == 3);
  CHECK(validate_interleaving(set, eager));
  std::vector<std::vector<Index>> pos{{1, 1, 1}};
  for (std::size_t k = 0; k < set.size(); ++k) {
    while (pos.back()[k] < set[k].length()) {
      auto next = pos.back();
      ++next[k];
      pos.push_back(next);
    }
  }
  CHECK(pos.size() == (3 - 1) + (1 - 1) + (2 - 1) + 1);
  CHECK(validate_interleaving(set, Interleaving::from_positions(set, pos)));
}

TEST_CASE("property: sps respects the lower bounds and process order") {
  testing::Rng rng(11);
  for (int c = 0; c < 300; ++c) {
    const ProcessSet set = testing::random_set(rng, 4, 6, 20);
    const Interleaving eager = eager_schedule(set);
    CHECK(validate_interleaving(set, eager));
    CHECK(sps(eager) >= lower_bounds(set).max());

    std::vector<Process> rev(set.begin(), set.end());
    std::reverse(rev.begin(), rev.end());
    Interleaving permuted = eager;
    for (auto& row : permuted.steps) std::reverse(row.begin(), row.end());
    for (auto& row : permuted.positions) std::reverse(row.begin(), row.end());
    CHECK(validate_interleaving(ProcessSet(rev), permuted));
    CHECK(sps(permuted) == sps(eager));
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace spacesched
