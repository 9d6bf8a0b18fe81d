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


// JSON problem files. Indices are 1-based, as everywhere else.
//
//   {"version": 1,
//    "processes": [{"id": "P1", "trace": [10, 1, 12]}, ...],
//    "constraints": {"op": "and", "args": [
//        {"atom": "simul", "p1": "P0", "p2": "P1", "i1": 2, "i2": 3},
//        {"atom": "starts", "p1": "Q1", "p2": "P1", "i": 1}, ...]}}
//
// "constraints" is optional. Connectives are "and", "or" and "not"; "not"
// takes exactly one argument.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "spacesched/sync.hpp"

namespace spacesched::cli {

using json = nlohmann::ordered_json;

struct ProblemFile {
  ProcessSet processes;
  bool has_constraints = false;
  Formula constraints;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

// Throws Error(kInvalidInput) with a message naming the offending field.
ProblemFile parse_problem(const json& doc);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile read_problem_file(const std::string& path);

json to_json(const ProcessSet& set);
json to_json(const Formula& formula);
json to_json(const ProblemFile& problem);

Formula parse_formula(const json& node);

}  // namespace spacesched::cli
