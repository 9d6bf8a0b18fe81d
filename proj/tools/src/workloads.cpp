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


#include "spacesched/cli/workloads.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "spacesched/oracle.hpp"
#include "spacesched/spoptn.hpp"

namespace spacesched::cli {

namespace {

using Rng = std::mt19937_64;

Space draw(Rng& rng, Space lo, Space hi) {
  return std::uniform_int_distribution<Space>(lo, hi)(rng);
}

// Each fuzz case gets its own stream so results do not depend on the order
// in which cases run.
Rng case_rng(std::uint64_t seed, std::size_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return Rng(seq);
}

ProcessSet draw_set(Rng& rng, std::size_t max_n, std::size_t max_len, Space max_val) {
  std::vector<Trace> traces(static_cast<std::size_t>(draw(rng, 1, static_cast<Space>(max_n))));
  for (auto& t : traces) {
    t.resize(static_cast<std::size_t>(draw(rng, 1, static_cast<Space>(max_len))));
    for (auto& v : t) v = draw(rng, 0, max_val);
  }
  return ProcessSet::from_traces(traces);
}

std::vector<Trace> traces_of(const ProcessSet& s) {
  std::vector<Trace> out;
  for (const auto& p : s) out.push_back(p.trace());
  return out;
}

}  // namespace

ProcessSet random_problem(std::size_t n, std::size_t max_len, Space max_val,
                          std::uint64_t seed) {
  if (n < 1 || max_len < 1 || max_val < 0) {
    throw Error(ErrorKind::kInvalidInput, "random: need n >= 1, len >= 1, max >= 0");
  }
  Rng rng(seed);
  std::vector<Trace> traces(n);
  for (auto& t : traces) {
    t.resize(static_cast<std::size_t>(draw(rng, 1, static_cast<Space>(max_len))));
    for (auto& v : t) v = draw(rng, 0, max_val);
  }
  return ProcessSet::from_traces(traces);
}

ProcessSet bench_instance(std::size_t total, std::size_t procs, Space max_val,
                          std::uint64_t seed) {
  if (procs < 1 || total < procs) {
    throw Error(ErrorKind::kInvalidInput, "bench: need 1 <= procs <= size");
  }
  Rng rng(seed);
  std::vector<Trace> traces(procs);
  for (std::size_t k = 0; k < procs; ++k) {
    const std::size_t len = total / procs + (k < total % procs ? 1 : 0);
    traces[k].resize(len);
    for (auto& v : traces[k]) v = draw(rng, 0, max_val);
  }
  return ProcessSet::from_traces(traces);
}

std::string check_against_oracle(const ProcessSet& set, std::uint64_t budget) {
  const SpminResult r = spoptn(set);
  const Space expect = oracle_spmin(set, budget);
  if (r.spmin != expect) {
    return "spoptn " + std::to_string(r.spmin) + " != oracle " + std::to_string(expect);
  }
  try {
    const Interleaving il = reconstruct_schedule(set, r);
    if (auto v = validate_interleaving(set, il); !v) return "schedule invalid: " + v.violation;
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

ProcessSet minimize(ProcessSet set,
                    const std::function<std::string(const ProcessSet&)>& failing) {
  auto still_fails = [&](const std::vector<Trace>& traces) {
    try {
      return !failing(ProcessSet::from_traces(traces)).empty();
    } catch (const Error&) {
      return false;
    }
  };
  std::vector<Trace> cur = traces_of(set);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t k = 0; k < cur.size() && cur.size() > 1; ++k) {
      auto cand = cur;
      cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(k));
      if (still_fails(cand)) {
        cur = std::move(cand);
        progress = true;
        --k;
      }
    }
    for (std::size_t k = 0; k < cur.size(); ++k) {
      for (std::size_t j = 0; j < cur[k].size() && cur[k].size() > 1; ++j) {
        auto cand = cur;
        cand[k].erase(cand[k].begin() + static_cast<std::ptrdiff_t>(j));
        if (still_fails(cand)) {
          cur = std::move(cand);
          progress = true;
          --j;
        }
      }
    }
    for (std::size_t k = 0; k < cur.size(); ++k) {
      for (std::size_t j = 0; j < cur[k].size(); ++j) {
        while (cur[k][j] > 0) {
          auto cand = cur;
          cand[k][j] /= 2;
          if (!still_fails(cand)) {
            cand[k][j] = cur[k][j] - 1;
            if (!still_fails(cand)) break;
          }
          cur = std::move(cand);
          progress = true;
        }
      }
    }
  }
  return ProcessSet::from_traces(cur);
}

FuzzOutcome run_fuzz(const FuzzOptions& options) {
  if (options.max_n < 1 || options.max_len < 1 || options.max_val < 0) {
    throw Error(ErrorKind::kInvalidInput, "fuzz: bounds must be positive");
  }
  const std::uint64_t budget = options.budget ? options.budget : kDefaultOracleBudget;
  double states = 1;
  for (std::size_t k = 0; k < options.max_n; ++k) states *= static_cast<double>(options.max_len);
  if (states > static_cast<double>(budget)) {
    throw Error(ErrorKind::kBudgetExceeded,
                "fuzz bounds exceed the oracle budget (max-len^max-n > " +
                    std::to_string(budget) + ")");
  }
  const auto check = options.check ? options.check : [budget](const ProcessSet& s) {
    return check_against_oracle(s, budget);
  };

  FuzzOutcome out;
  for (std::size_t id = 0; id < options.cases; ++id) {
    Rng rng = case_rng(options.seed, id);
    const ProcessSet set = draw_set(rng, options.max_n, options.max_len, options.max_val);
    ++out.cases;
    std::string why = check(set);
    if (why.empty()) {
      ++out.passed;
      continue;
    }
    out.first_failure = id;
    out.failure = std::move(why);
    out.reproducer = minimize(set, check);
    break;
  }
  return out;
}

BenchRow time_spoptn(std::size_t size, std::size_t procs, std::uint64_t seed,
                     int repetitions) {
  const ProcessSet set = bench_instance(size, procs, 1'000'000, seed);
  BenchRow row{size, procs, 0, 0};
  for (int rep = 0; rep < std::max(repetitions, 1); ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    const SpminResult r = spoptn(set);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.millis = rep == 0 ? ms : std::min(row.millis, ms);
    row.spmin = r.spmin;
  }
  return row;
}

double loglog_slope(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.size));
    const double y = std::log(std::max(r.millis, 1e-6));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

}  // namespace spacesched::cli
