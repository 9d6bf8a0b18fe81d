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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spacesched {

enum class ErrorKind {
  kInvalidInput,
  kOverflow,
  kBudgetExceeded,
  kUnsatisfiable,
  kNotStandardized,
  kInternal,
};

// All library failures are reported through this exception. The kind drives
// the CLI exit code; the message is meant for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Space values are 64-bit; sums are checked instead of wrapping.
using Space = std::int64_t;

inline Space checked_add(Space a, Space b) {
  Space out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow, "arithmetic overflow in space sum");
  }
  return out;
}

inline Space checked_sub(Space a, Space b) {
  Space out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow, "arithmetic overflow in space difference");
  }
  return out;
}

}  // namespace spacesched
