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


#include "spacesched/cli/report.hpp"

namespace spacesched::cli {

json schedule_json(const Interleaving& il) {
  return {{"steps", il.steps}, {"positions", il.positions}, {"sps", sps(il)}};
}

json schedule_json(const TimedSchedule& s) {
  std::vector<std::vector<Space>> steps;
  for (std::size_t t = 1; t <= s.horizon(); ++t) {
    std::vector<Space> row;
    for (std::size_t k = 0; k < s.processes().size(); ++k) row.push_back(s.value(t, k));
    steps.push_back(std::move(row));
  }
  return {{"steps", steps}, {"positions", s.positions()}, {"sps", s.peak()}};
}

namespace {

json scan_json(const ScanResult& r, const StandardizedSet& s) {
  json events = json::array();
  for (const auto& ev : r.events) {
    events.push_back({{"process", s.processes[ev.process].id()},
                      {"from", ev.from},
                      {"to", ev.to}});
  }
  return {{"m", r.m}, {"m_trajectory", r.m_trajectory},
          {"s_trajectory", r.s_trajectory}, {"events", events}};
}

}  // namespace

json explain_json(const ProcessSet& set, const SpminResult& r) {
  const StandardizedSet& s = r.standardized;
  json reductions = json::array();
  for (const auto& log : s.provenance) {
    for (const auto& ev : log) {
      reductions.push_back({{"process", set[ev.process].id()},
                            {"kind", std::string(to_string(ev.kind))},
                            {"positions", ev.positions},
                            {"removed", ev.removed}});
    }
  }
  return {{"reductions", reductions},
          {"standardized", to_json(s.processes)},
          {"pattern_applications", s.pattern_applications},
          {"left", scan_json(r.left, s)},
          {"right", scan_json(r.right, s)}};
}

json solve_report(const ProcessSet& set, const SpminResult& r,
                  const std::optional<Interleaving>& schedule, bool explain,
                  double millis) {
  json doc = {{"version", 1},
              {"command", "solve"},
              {"processes", to_json(set)},
              {"spmin", r.spmin},
              {"components",
               {{"m_left", r.m_left},
                {"m_right", r.m_right},
                {"m_start", r.m_start},
                {"m_end", r.m_end},
                {"m_one", r.m_one}}},
              {"timing_ms", millis}};
  if (schedule) doc["schedule"] = schedule_json(*schedule);
  if (explain) doc["explain"] = explain_json(set, r);
  return doc;
}

json oracle_report(const ProcessSet& set, Space spmin,
                   const std::optional<Interleaving>& schedule, double millis) {
  json doc = {{"version", 1},
              {"command", "oracle"},
              {"processes", to_json(set)},
              {"spmin", spmin},
              {"timing_ms", millis}};
  if (schedule) doc["schedule"] = schedule_json(*schedule);
  return doc;
}

json constrained_report(const ProcessSet& set, const ConstrainedSolution& sol,
                        double millis) {
  return {{"version", 1},
          {"command", "constrained"},
          {"processes", to_json(set)},
          {"spmin", sol.spmin},
          {"states", sol.states},
          {"schedule", schedule_json(sol.schedule)},
          {"timing_ms", millis}};
}

}  // namespace spacesched::cli
