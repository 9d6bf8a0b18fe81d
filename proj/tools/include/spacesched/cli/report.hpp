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


// Machine-readable reports; the layout is pinned by schema/report.schema.json.

#pragma once

#include <optional>

#include "spacesched/cli/problem_io.hpp"
#include "spacesched/oracle.hpp"
#include "spacesched/spoptn.hpp"

namespace spacesched::cli {

json schedule_json(const Interleaving& il);
json schedule_json(const TimedSchedule& s);
json explain_json(const ProcessSet& set, const SpminResult& r);

json solve_report(const ProcessSet& set, const SpminResult& r,
                  const std::optional<Interleaving>& schedule, bool explain,
                  double millis);
json oracle_report(const ProcessSet& set, Space spmin,
                   const std::optional<Interleaving>& schedule, double millis);
json constrained_report(const ProcessSet& set, const ConstrainedSolution& sol,
                        double millis);

}  // namespace spacesched::cli
