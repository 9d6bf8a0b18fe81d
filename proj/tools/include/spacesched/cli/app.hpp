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


// The `spacesched` command line. Exit codes:
//   0 ok, 1 fuzz mismatch, 2 input error, 3 overflow, 4 budget exceeded,
//   5 unsatisfiable constraints.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spacesched/error.hpp"

namespace spacesched::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitInput = 2,
  kExitOverflow = 3,
  kExitBudget = 4,
  kExitUnsat = 5,
};

int exit_code_for(ErrorKind kind);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spacesched::cli
