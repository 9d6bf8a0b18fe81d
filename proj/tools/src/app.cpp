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


#include "spacesched/cli/app.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spacesched/cli/problem_io.hpp"
#include "spacesched/cli/render.hpp"
#include "spacesched/cli/report.hpp"
#include "spacesched/cli/workloads.hpp"

namespace spacesched::cli {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kNotStandardized: return kExitInput;
    case ErrorKind::kOverflow: return kExitOverflow;
    case ErrorKind::kBudgetExceeded: return kExitBudget;
    case ErrorKind::kUnsatisfiable: return kExitUnsat;
    case ErrorKind::kInternal: return kExitMismatch;
  }
  return kExitMismatch;
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t default_oracle_budget() {
  if (const char* env = std::getenv("SPACESCHED_ORACLE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw Error(ErrorKind::kInvalidInput, "SPACESCHED_ORACLE_BUDGET must be a positive integer");
  }
  return kDefaultOracleBudget;
}

std::string join(const std::vector<Space>& v, const char* sep = " ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

std::string join(const std::vector<Index>& v, const char* sep = " ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

void print_schedule_text(std::ostream& out, const std::vector<std::vector<Index>>& pos,
                         const std::vector<std::vector<Space>>& steps) {
  out << "schedule (" << steps.size() << " steps)\n";
  for (std::size_t t = 0; t < steps.size(); ++t) {
    Space s = 0;
    for (Space v : steps[t]) s = checked_add(s, v);
    out << "  " << std::setw(4) << t + 1 << "  at (" << join(pos[t], ",") << ")  values ("
        << join(steps[t], ",") << ")  sum " << s << "\n";
  }
}

void print_explain_text(std::ostream& out, const ProcessSet& set, const SpminResult& r) {
  const StandardizedSet& s = r.standardized;
  out << "standardization\n";
  for (const auto& log : s.provenance) {
    for (const auto& ev : log) {
      out << "  " << set[ev.process].id() << " " << to_string(ev.kind) << " removes ["
          << join(ev.positions, ",") << "] values [" << join(ev.removed, ",") << "]\n";
    }
  }
  out << "standardized processes\n";
  for (const auto& p : s.processes) out << "  " << p.id() << " [" << join(p.trace(), ",") << "]\n";
  auto scan_lines = [&](const char* name, const ScanResult& sr) {
    out << name << " scan  M: " << join(sr.m_trajectory) << "\n";
    for (const auto& ev : sr.events) {
      out << "  " << s.processes[ev.process].id() << " " << ev.from << " -> " << ev.to << "\n";
    }
  };
  scan_lines("left", r.left);
  scan_lines("right", r.right);
}

ProblemFile load(const std::string& path) { return read_problem_file(path); }

struct Flags {
  std::string file;
  bool schedule = false;
  bool explain = false;
  bool json_out = false;
  std::uint64_t budget = 0;
};

int cmd_solve(const Flags& f, std::ostream& out) {
  const ProblemFile pf = load(f.file);
  if (pf.has_constraints) {
    throw Error(ErrorKind::kInvalidInput,
                "file has constraints; use the constrained command");
  }
  const auto t0 = Clock::now();
  const SpminResult r = spoptn(pf.processes);
  const double ms = millis_since(t0);
  std::optional<Interleaving> il;
  if (f.schedule) il = reconstruct_schedule(pf.processes, r);
  if (f.json_out) {
    out << solve_report(pf.processes, r, il, f.explain, ms).dump(2) << "\n";
    return kExitOk;
  }
  out << "spmin " << r.spmin << "\n";
  out << "  m_left " << r.m_left << "  m_right " << r.m_right << "  m_start " << r.m_start
      << "  m_end " << r.m_end << "  m_one " << r.m_one << "\n";
  if (f.explain) print_explain_text(out, pf.processes, r);
  if (il) print_schedule_text(out, il->positions, il->steps);
  return kExitOk;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  const ProblemFile pf = load(f.file);
  const std::uint64_t budget = f.budget ? f.budget : default_oracle_budget();
  const auto t0 = Clock::now();
  const Interleaving il = oracle_schedule(pf.processes, budget);
  const Space best = sps(il);
  const double ms = millis_since(t0);
  if (f.json_out) {
    out << oracle_report(pf.processes, best, il, ms).dump(2) << "\n";
    return kExitOk;
  }
  out << "spmin " << best << "\n";
  if (f.schedule) print_schedule_text(out, il.positions, il.steps);
  return kExitOk;
}

int cmd_constrained(const Flags& f, std::ostream& out) {
  const ProblemFile pf = load(f.file);
  const std::uint64_t budget = f.budget ? f.budget : kDefaultConstrainedBudget;
  const auto t0 = Clock::now();
  const ConstrainedSolution sol = solve_constrained({pf.processes, pf.constraints}, budget);
  const double ms = millis_since(t0);
  if (f.json_out) {
    out << constrained_report(pf.processes, sol, ms).dump(2) << "\n";
    return kExitOk;
  }
  out << "spmin " << sol.spmin << "\n";
  out << "  states explored " << sol.states << "\n";
  if (f.schedule) {
    const json s = schedule_json(sol.schedule);
    print_schedule_text(out, sol.schedule.positions(),
                        s["steps"].get<std::vector<std::vector<Space>>>());
  }
  return kExitOk;
}

std::vector<std::string> ids_of(const ProcessSet& set) {
  std::vector<std::string> ids;
  for (const auto& p : set) ids.push_back(p.id());
  return ids;
}

int cmd_render(const std::string& file, std::size_t width, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot open " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput, std::string("malformed JSON: ") + e.what());
  }

  // A report carries its schedule; a problem file is solved first.
  if (doc.contains("spmin") && doc.contains("schedule")) {
    const ProblemFile pf = parse_problem({{"version", 1}, {"processes", doc.at("processes")}});
    out << render_curves(pf.processes, width);
    out << "\nschedule (spmin " << doc.at("spmin").get<Space>() << ")\n";
    out << render_schedule(ids_of(pf.processes),
                           doc.at("schedule").at("steps").get<std::vector<std::vector<Space>>>(),
                           width);
    return kExitOk;
  }
  const ProblemFile pf = parse_problem(doc);
  out << render_curves(pf.processes, width);
  std::vector<std::vector<Space>> steps;
  Space spmin = 0;
  if (pf.has_constraints) {
    const ConstrainedSolution sol = solve_constrained({pf.processes, pf.constraints});
    steps = schedule_json(sol.schedule)["steps"].get<std::vector<std::vector<Space>>>();
    spmin = sol.spmin;
  } else {
    const SpminResult r = spoptn(pf.processes);
    steps = reconstruct_schedule(pf.processes, r).steps;
    spmin = r.spmin;
  }
  out << "\nschedule (spmin " << spmin << ")\n";
  out << render_schedule(ids_of(pf.processes), steps, width);
  return kExitOk;
}

std::vector<Space> parse_values(const std::string& text) {
  std::vector<Space> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    Space v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw Error(ErrorKind::kInvalidInput, "not an integer: \"" + item + "\"");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (Space v : parse_values(text)) {
    if (v < 1) throw Error(ErrorKind::kInvalidInput, "sizes must be positive");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal peak space of interleaved process traces"};
  app.name("spacesched");
  app.require_subcommand(1);

  Flags f;
  auto* solve = app.add_subcommand("solve", "spmin of an unconstrained problem file");
  solve->add_option("file", f.file, "problem JSON")->required();
  solve->add_flag("--schedule", f.schedule, "print a space-optimal interleaving");
  solve->add_flag("--explain", f.explain, "print reductions and scan trajectories");
  solve->add_flag("--json", f.json_out, "print a JSON report");

  auto* oracle = app.add_subcommand("oracle", "exact spmin by exhaustive search");
  oracle->add_option("file", f.file, "problem JSON")->required();
  oracle->add_option("--budget", f.budget,
                     "state limit (default $SPACESCHED_ORACLE_BUDGET or 2000000)");
  oracle->add_flag("--schedule", f.schedule, "print the optimal interleaving");
  oracle->add_flag("--json", f.json_out, "print a JSON report");

  auto* constrained = app.add_subcommand("constrained", "spmin under synchronization constraints");
  constrained->add_option("file", f.file, "problem JSON with constraints")->required();
  constrained->add_option("--budget", f.budget, "state limit (default 1000000)");
  constrained->add_flag("--schedule", f.schedule, "print the witness schedule");
  constrained->add_flag("--json", f.json_out, "print a JSON report");

  auto* gen = app.add_subcommand("gen", "write a problem file to standard output");
  gen->require_subcommand(1);
  std::string partition_values;
  auto* gen_partition = gen->add_subcommand("partition", "partition reduction of a multiset");
  gen_partition->add_option("values", partition_values, "comma separated, e.g. 1,2,3")->required();
  std::size_t prodcons_n = 0;
  auto* gen_prodcons = gen->add_subcommand("prodcons", "producer-consumer with n items");
  gen_prodcons->add_option("n", prodcons_n, "item count")->required();
  std::size_t rand_n = 4, rand_len = 6;
  Space rand_max = 20;
  std::uint64_t rand_seed = 1;
  auto* gen_random = gen->add_subcommand("random", "random unconstrained problem");
  gen_random->add_option("--n", rand_n, "process count");
  gen_random->add_option("--len", rand_len, "maximum trace length");
  gen_random->add_option("--max", rand_max, "maximum value");
  gen_random->add_option("--seed", rand_seed, "seed");

  FuzzOptions fo;
  auto* fuzz = app.add_subcommand("fuzz", "compare spoptn with the oracle on random sets");
  fuzz->add_option("--cases", fo.cases, "case count");
  fuzz->add_option("--seed", fo.seed, "seed");
  fuzz->add_option("--max-n", fo.max_n, "maximum process count");
  fuzz->add_option("--max-len", fo.max_len, "maximum trace length");
  fuzz->add_option("--max-val", fo.max_val, "maximum value");
  fuzz->add_option("--budget", fo.budget, "oracle state limit");

  std::string sizes = "10000,100000,1000000";
  std::size_t procs = 1000;
  std::uint64_t bench_seed = 1;
  int reps = 3;
  auto* bench = app.add_subcommand("bench", "time spoptn over growing instances");
  bench->add_option("--sizes", sizes, "comma separated total element counts");
  bench->add_option("--procs", procs, "process count");
  bench->add_option("--seed", bench_seed, "seed");
  bench->add_option("--reps", reps, "repetitions per size; the best is kept");

  std::size_t width = kRenderWidth;
  auto* render = app.add_subcommand("render", "draw traces and a schedule");
  render->add_option("file", f.file, "problem JSON or report JSON")->required();
  render->add_option("--width", width, "maximum columns")->check(CLI::Range(8, 1000));

  std::vector<std::string> argv_store{"spacesched"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(f, out);
    if (*oracle) return cmd_oracle(f, out);
    if (*constrained) return cmd_constrained(f, out);
    if (*gen) {
      ProblemFile pf;
      if (*gen_partition) {
        const ConstrainedProblem p = encode_partition(parse_values(partition_values));
        pf = {p.processes, true, p.formula};
      } else if (*gen_prodcons) {
        const ConstrainedProblem p = gen_producer_consumer(prodcons_n);
        pf = {p.processes, true, p.formula};
      } else {
        pf.processes = random_problem(rand_n, rand_len, rand_max, rand_seed);
      }
      out << to_json(pf).dump(2) << "\n";
      return kExitOk;
    }
    if (*fuzz) {
      const FuzzOutcome r = run_fuzz(fo);
      if (r.passed == r.cases) {
        out << r.passed << "/" << r.cases << " ok\n";
        return kExitOk;
      }
      out << r.passed << "/" << fo.cases << " ok before case " << r.first_failure
          << " failed: " << r.failure << "\n";
      out << "minimized reproducer:\n"
          << to_json(ProblemFile{r.reproducer, false, Formula()}).dump(2) << "\n";
      return kExitMismatch;
    }
    if (*bench) {
      std::vector<BenchRow> rows;
      out << std::setw(10) << "size" << std::setw(8) << "procs" << std::setw(12) << "ms" << "\n";
      for (std::size_t size : parse_sizes(sizes)) {
        const BenchRow row = time_spoptn(size, std::min(procs, size), bench_seed, reps);
        rows.push_back(row);
        out << std::setw(10) << row.size << std::setw(8) << row.procs << std::setw(12)
            << std::fixed << std::setprecision(3) << row.millis << "\n";
      }
      if (rows.size() >= 2) {
        out << "log-log slope " << std::fixed << std::setprecision(3) << loglog_slope(rows)
            << "\n";
      }
      return kExitOk;
    }
    if (*render) return cmd_render(f.file, width, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace spacesched::cli
