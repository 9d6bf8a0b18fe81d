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


// Monospace pictures of traces and schedules.

#pragma once

#include <string>
#include <vector>

#include "spacesched/trace.hpp"

namespace spacesched::cli {

inline constexpr std::size_t kRenderWidth = 72;
inline constexpr std::size_t kRenderHeight = 6;

// One bar curve per process. Columns beyond `width` are merged, keeping the
// largest value of each bucket, and a notice line says so.
std::string render_curves(const ProcessSet& set, std::size_t width = kRenderWidth,
                          std::size_t height = kRenderHeight);

// Rows are processes, columns are steps; the glyph encodes the value shown at
// that step and a blank means the process contributes nothing. The last rows
// give per-column sums and mark the peak.
std::string render_schedule(const std::vector<std::string>& ids,
                            const std::vector<std::vector<Space>>& steps,
                            std::size_t width = kRenderWidth);

}  // namespace spacesched::cli
