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

#include "spacesched/sync.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <unordered_map>

namespace spacesched {

std::string_view to_string(RestrictionKind kind) {
  switch (kind) {
    case RestrictionKind::kSimul: return "simul";
    case RestrictionKind::kStarts: return "starts";
    case RestrictionKind::kEnds: return "ends";
    case RestrictionKind::kBefore: return "before";
  }
  return "?";
}

BasicRestriction BasicRestriction::simul(std::string a, std::string b, Index ia,
                                         Index ib) {
  return {RestrictionKind::kSimul, std::move(a), std::move(b), ia, ib};
}
BasicRestriction BasicRestriction::before(std::string a, std::string b, Index ia,
                                          Index ib) {
  return {RestrictionKind::kBefore, std::move(a), std::move(b), ia, ib};
}
BasicRestriction BasicRestriction::starts(std::string a, std::string b, Index i) {
  return {RestrictionKind::kStarts, std::move(a), std::move(b), 1, i};
}
BasicRestriction BasicRestriction::ends(std::string a, std::string b, Index i) {
  return {RestrictionKind::kEnds, std::move(a), std::move(b), 1, i};
}

Formula Formula::atom(BasicRestriction r) {
  Formula f;
  f.op_ = Op::kAtom;
  f.atom_ = std::move(r);
  return f;
}

Formula Formula::all_of(std::vector<Formula> children) {
  Formula f;
  f.op_ = Op::kAnd;
  f.children_ = std::move(children);
  return f;
}

Formula Formula::any_of(std::vector<Formula> children) {
  Formula f;
  f.op_ = Op::kOr;
  f.children_ = std::move(children);
  return f;
}

Formula Formula::negate(Formula child) {
  Formula f;
  f.op_ = Op::kNot;
  f.children_.push_back(std::move(child));
  return f;
}

std::vector<BasicRestriction> Formula::atoms() const {
  std::vector<BasicRestriction> out;
  auto visit = [&](const Formula& f, auto&& self) -> void {
    if (f.op_ == Op::kAtom) {
      out.push_back(f.atom_);
      return;
    }
    for (const auto& c : f.children_) self(c, self);
  };
  visit(*this, visit);
  return out;
}

std::size_t Formula::atom_count() const { return atoms().size(); }

namespace {

std::optional<std::size_t> find_process(const ProcessSet& set,
                                        const std::string& id) {
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k].id() == id) return k;
  }
  return std::nullopt;
}

enum class Relation { kEqual, kNotAfter };

// A restriction reduced to two resolved time points.
struct ResolvedAtom {
  std::size_t a_proc;
  Index a_index;
  std::size_t b_proc;
  Index b_index;
  Relation rel;
};

ResolvedAtom resolve(const BasicRestriction& r, const ProcessSet& set) {
  const auto a = find_process(set, r.p1);
  const auto b = find_process(set, r.p2);
  if (!a || !b) throw Error(ErrorKind::kInvalidInput, "unknown time point");
  ResolvedAtom out{*a, r.i1, *b, r.i2, Relation::kEqual};
  switch (r.kind) {
    case RestrictionKind::kSimul: break;
    case RestrictionKind::kBefore: out.rel = Relation::kNotAfter; break;
    case RestrictionKind::kStarts: out.a_index = 1; break;
    case RestrictionKind::kEnds: out.a_index = set[*a].length(); break;
  }
  if (out.a_index < 1 || out.a_index > set[*a].length() || out.b_index < 1 ||
      out.b_index > set[*b].length()) {
    throw Error(ErrorKind::kInvalidInput, "unknown time point");
  }
  return out;
}

}  // namespace

void ConstrainedProblem::validate() const {
  for (const auto& r : formula.atoms()) resolve(r, processes);
}

TimedSchedule::TimedSchedule(ProcessSet processes,
                             std::vector<std::vector<Index>> positions)
    : processes_(std::move(processes)), positions_(std::move(positions)) {
  for (const auto& row : positions_) {
    if (row.size() != processes_.size()) {
      throw Error(ErrorKind::kInvalidInput, "schedule arity mismatch");
    }
  }
}

std::optional<std::size_t> TimedSchedule::tau(std::size_t process,
                                              Index index) const {
  for (std::size_t t = 0; t < positions_.size(); ++t) {
    if (positions_[t][process] == index) return t + 1;
  }
  return std::nullopt;
}

Space TimedSchedule::value(std::size_t step, std::size_t process) const {
  const Index pos = positions_[step - 1][process];
  const Process& p = processes_[process];
  if (pos == 0 || pos > p.length()) return 0;
  return p.at(pos);
}

Space TimedSchedule::step_sum(std::size_t step) const {
  Space s = 0;
  for (std::size_t k = 0; k < processes_.size(); ++k) {
    s = checked_add(s, value(step, k));
  }
  return s;
}

Space TimedSchedule::peak() const {
  Space best = 0;
  for (std::size_t t = 1; t <= horizon(); ++t) best = std::max(best, step_sum(t));
  return best;
}

Verdict TimedSchedule::check() const {
  if (positions_.empty()) return Verdict::fail("empty schedule");
  for (std::size_t k = 0; k < processes_.size(); ++k) {
    const Index m = processes_[k].length();
    Index prev = 0;
    for (std::size_t t = 0; t < positions_.size(); ++t) {
      const Index cur = positions_[t][k];
      if (cur > m + 1) return Verdict::fail("position out of range");
      if (cur < prev || cur > prev + 1) {
        return Verdict::fail("process " + processes_[k].id() +
                             " does not advance by 0 or 1 at step " +
                             std::to_string(t + 1));
      }
      prev = cur;
    }
    if (prev < m) {
      return Verdict::fail("process " + processes_[k].id() + " does not finish");
    }
  }
  return Verdict::pass();
}

bool eval_formula(const Formula& formula, const TimedSchedule& schedule) {
  switch (formula.op()) {
    case Formula::Op::kAtom: {
      const ResolvedAtom a = resolve(formula.restriction(), schedule.processes());
      const auto ta = schedule.tau(a.a_proc, a.a_index);
      const auto tb = schedule.tau(a.b_proc, a.b_index);
      if (!ta || !tb) throw Error(ErrorKind::kInvalidInput, "unknown time point");
      return a.rel == Relation::kEqual ? *ta == *tb : *ta <= *tb;
    }
    case Formula::Op::kAnd:
      return std::all_of(formula.children().begin(), formula.children().end(),
                         [&](const Formula& c) { return eval_formula(c, schedule); });
    case Formula::Op::kOr:
      return std::any_of(formula.children().begin(), formula.children().end(),
                         [&](const Formula& c) { return eval_formula(c, schedule); });
    case Formula::Op::kNot:
      return !eval_formula(formula.children().front(), schedule);
  }
  return false;
}

namespace {

enum Status : std::uint8_t { kPending = 0, kTrue = 1, kFalse = 2 };

// Formula with atoms replaced by their position in the resolved atom list.
struct IndexedFormula {
  Formula::Op op;
  std::size_t atom = 0;
  std::vector<IndexedFormula> children;
};

IndexedFormula index_formula(const Formula& f, std::size_t& next_atom) {
  IndexedFormula out{f.op(), 0, {}};
  if (f.op() == Formula::Op::kAtom) {
    out.atom = next_atom++;
    return out;
  }
  for (const auto& c : f.children()) out.children.push_back(index_formula(c, next_atom));
  return out;
}

// Kleene three-valued evaluation with pending atoms as unknown.
Status eval3(const IndexedFormula& f, const std::uint8_t* status) {
  switch (f.op) {
    case Formula::Op::kAtom:
      return static_cast<Status>(status[f.atom]);
    case Formula::Op::kAnd: {
      Status acc = kTrue;
      for (const auto& c : f.children) {
        const Status s = eval3(c, status);
        if (s == kFalse) return kFalse;
        if (s == kPending) acc = kPending;
      }
      return acc;
    }
    case Formula::Op::kOr: {
      Status acc = kFalse;
      for (const auto& c : f.children) {
        const Status s = eval3(c, status);
        if (s == kTrue) return kTrue;
        if (s == kPending) acc = kPending;
      }
      return acc;
    }
    case Formula::Op::kNot: {
      const Status s = eval3(f.children.front(), status);
      return s == kPending ? kPending : (s == kTrue ? kFalse : kTrue);
    }
  }
  return kPending;
}

// State layout: N positions (uint16, little endian) then one status byte per
// atom. Stored as a byte string so it can key a hash map directly.
class ConstrainedSearch {
 public:
  ConstrainedSearch(const ConstrainedProblem& problem, std::uint64_t budget)
      : set_(problem.processes), budget_(budget) {
    problem.validate();
    for (const auto& r : problem.formula.atoms()) {
      atoms_.push_back(resolve(r, set_));
      if (r.kind == RestrictionKind::kStarts) free_start_.push_back(r.p1);
      if (r.kind == RestrictionKind::kEnds) free_end_.push_back(r.p1);
    }
    std::size_t counter = 0;
    formula_ = index_formula(problem.formula, counter);
    const std::size_t n = set_.size();
    spawned_.assign(n, false);
    joined_.assign(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& id = set_[k].id();
      spawned_[k] = std::count(free_start_.begin(), free_start_.end(), id) > 0;
      joined_[k] = std::count(free_end_.begin(), free_end_.end(), id) > 0;
      if (set_[k].length() + 1 > std::numeric_limits<std::uint16_t>::max()) {
        throw Error(ErrorKind::kBudgetExceeded, "constrained search too large");
      }
    }
  }

  ConstrainedSolution run() {
    const std::size_t n = set_.size();
    std::string origin(2 * n + atoms_.size(), '\0');
    intern(origin, kNoParent, 0);

    using Item = std::pair<Space, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    open.emplace(0, 0);
    std::vector<Index> pos(n), next(n);
    std::vector<std::uint8_t> option_count(n);
    std::vector<std::array<Index, 2>> options(n);

    while (!open.empty()) {
      const auto [cost, id] = open.top();
      open.pop();
      if (nodes_[id].closed) continue;
      nodes_[id].closed = true;
      const std::string key = keys_[id];
      decode(key, pos);
      const bool virtual_start = id == 0;
      if (!virtual_start && complete(pos)) {
        if (eval3(formula_, status_of(key)) == kTrue) return witness(id, cost);
        continue;
      }

      for (std::size_t k = 0; k < n; ++k) {
        const Index m = set_[k].length();
        const Index p = pos[k];
        auto& opt = options[k];
        if (p == 0 && spawned_[k]) {
          opt = {0, 1}; option_count[k] = 2;
        } else if (p == 0) {
          // Everything not spawned starts together on the first step.
          opt = {1, 1}; option_count[k] = 1;
        } else if (p < m) {
          opt = {p, p + 1}; option_count[k] = 2;
        } else if (p == m && joined_[k]) {
          opt = {m + 1, m + 1}; option_count[k] = 1;
        } else {
          opt = {p, p}; option_count[k] = 1;
        }
      }

      std::vector<std::uint8_t> choice(n, 0);
      while (true) {
        bool moved = false;
        for (std::size_t k = 0; k < n; ++k) {
          next[k] = options[k][choice[k]];
          moved = moved || next[k] != pos[k];
        }
        if (moved) expand(key, pos, next, cost, id, open);
        std::size_t k = 0;
        while (k < n && ++choice[k] == option_count[k]) choice[k++] = 0;
        if (k == n) break;
      }
    }
    throw Error(ErrorKind::kUnsatisfiable, "no permitted schedule");
  }

 private:
  static constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::uint32_t parent;
    Space cost;
    bool closed = false;
  };

  using Open = std::priority_queue<std::pair<Space, std::uint32_t>,
                                   std::vector<std::pair<Space, std::uint32_t>>,
                                   std::greater<>>;

  void decode(const std::string& key, std::vector<Index>& pos) const {
    for (std::size_t k = 0; k < pos.size(); ++k) {
      pos[k] = static_cast<unsigned char>(key[2 * k]) |
               static_cast<unsigned char>(key[2 * k + 1]) << 8;
    }
  }

  const std::uint8_t* status_of(const std::string& key) const {
    return reinterpret_cast<const std::uint8_t*>(key.data()) + 2 * set_.size();
  }

  bool complete(const std::vector<Index>& pos) const {
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const Index m = set_[k].length();
      if (pos[k] != (joined_[k] ? m + 1 : m)) return false;
    }
    return true;
  }

  Space tuple_sum(const std::vector<Index>& pos) const {
    Space s = 0;
    for (std::size_t k = 0; k < pos.size(); ++k) {
      if (pos[k] >= 1 && pos[k] <= set_[k].length()) {
        s = checked_add(s, set_[k].at(pos[k]));
      }
    }
    return s;
  }

  void expand(const std::string& key, const std::vector<Index>& pos,
              const std::vector<Index>& next, Space cost, std::uint32_t parent,
              Open& open) {
    const std::size_t n = pos.size();
    std::string succ = key;
    for (std::size_t k = 0; k < n; ++k) {
      succ[2 * k] = static_cast<char>(next[k] & 0xff);
      succ[2 * k + 1] = static_cast<char>(next[k] >> 8);
    }
    auto* status = reinterpret_cast<std::uint8_t*>(succ.data()) + 2 * n;
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      if (status[a] != kPending) continue;
      const ResolvedAtom& at = atoms_[a];
      const bool a_was = pos[at.a_proc] >= at.a_index;
      const bool b_was = pos[at.b_proc] >= at.b_index;
      const bool a_now = next[at.a_proc] >= at.a_index;
      const bool b_now = next[at.b_proc] >= at.b_index;
      const bool a_fires = a_now && !a_was;
      const bool b_fires = b_now && !b_was;
      if (!a_fires && !b_fires) continue;
      if (at.rel == Relation::kEqual) {
        status[a] = a_fires && b_fires ? kTrue : kFalse;
      } else {
        status[a] = a_fires ? kTrue : kFalse;
      }
    }
    if (eval3(formula_, status) == kFalse) return;
    const Space c = std::max(cost, tuple_sum(next));
    auto it = index_.find(succ);
    if (it == index_.end()) {
      const std::uint32_t id = intern(succ, parent, c);
      open.emplace(c, id);
    } else if (!nodes_[it->second].closed && c < nodes_[it->second].cost) {
      nodes_[it->second].cost = c;
      nodes_[it->second].parent = parent;
      open.emplace(c, it->second);
    }
  }

  std::uint32_t intern(const std::string& key, std::uint32_t parent, Space cost) {
    if (keys_.size() >= budget_) {
      throw Error(ErrorKind::kBudgetExceeded, "constrained search too large");
    }
    const auto id = static_cast<std::uint32_t>(keys_.size());
    keys_.push_back(key);
    nodes_.push_back({parent, cost});
    index_.emplace(key, id);
    return id;
  }

  ConstrainedSolution witness(std::uint32_t id, Space cost) const {
    std::vector<std::vector<Index>> rows;
    std::vector<Index> pos(set_.size());
    for (std::uint32_t s = id; s != 0; s = nodes_[s].parent) {
      decode(keys_[s], pos);
      rows.push_back(pos);
    }
    std::reverse(rows.begin(), rows.end());
    return {cost, TimedSchedule(set_, std::move(rows)), keys_.size()};
  }

  const ProcessSet& set_;
  std::uint64_t budget_;
  std::vector<ResolvedAtom> atoms_;
  std::vector<std::string> free_start_, free_end_;
  std::vector<bool> spawned_, joined_;
  IndexedFormula formula_;
  std::vector<std::string> keys_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace

ConstrainedSolution solve_constrained(const ConstrainedProblem& problem,
                                      std::uint64_t budget) {
  if (problem.processes.empty()) {
    throw Error(ErrorKind::kInvalidInput, "empty process set");
  }
  ConstrainedSearch search(problem, budget);
  return search.run();
}

ConstrainedProblem encode_partition(const std::vector<Space>& values) {
  if (values.empty()) throw Error(ErrorKind::kInvalidInput, "empty multiset");
  std::vector<Process> procs;
  procs.emplace_back("P0", Trace{0, 0, 0, 0});
  std::vector<Formula> clauses;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) {
      throw Error(ErrorKind::kInvalidInput, "partition values must be positive");
    }
    const std::string id = "P" + std::to_string(i + 1);
    procs.emplace_back(id, Trace{0, values[i], 0, 0});
    clauses.push_back(Formula::any_of(
        {Formula::atom(BasicRestriction::simul("P0", id, 2, 3)),
         Formula::atom(BasicRestriction::simul("P0", id, 3, 2))}));
  }
  return {ProcessSet(std::move(procs)), Formula::all_of(std::move(clauses))};
}

Space partition_oracle(const std::vector<Space>& values) {
  if (values.empty() || values.size() > 24) {
    throw Error(ErrorKind::kInvalidInput, "partition oracle supports 1..24 values");
  }
  Space total = 0;
  for (Space v : values) total = checked_add(total, v);
  Space best = total;
  const std::uint32_t subsets = 1u << values.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    Space side = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (mask >> i & 1) side += values[i];
    }
    best = std::min(best, std::max(side, total - side));
  }
  return best;
}

ConstrainedProblem gen_producer_consumer(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::kInvalidInput, "item count must be >= 1");
  std::vector<Process> procs;
  procs.emplace_back("P1", Trace(n, 1));
  procs.emplace_back("P2", Trace(n, 1));
  for (std::size_t i = 1; i <= n; ++i) {
    procs.emplace_back("Q" + std::to_string(i), Trace{1, 0});
  }
  std::vector<Formula> atoms;
  for (std::size_t i = 1; i <= n; ++i) {
    atoms.push_back(Formula::atom(
        BasicRestriction::starts("Q" + std::to_string(i), "P1", i)));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    atoms.push_back(Formula::atom(
        BasicRestriction::before("P2", "Q" + std::to_string(i), i, 2)));
  }
  for (std::size_t i = 1; i < n; ++i) {
    atoms.push_back(Formula::atom(BasicRestriction::before(
        "Q" + std::to_string(i), "Q" + std::to_string(i + 1), 2, 2)));
  }
  return {ProcessSet(std::move(procs)), Formula::all_of(std::move(atoms))};
}

}  // namespace spacesched
