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


#include "spacesched/cli/render.hpp"

#include <algorithm>
#include <sstream>

namespace spacesched::cli {

namespace {

constexpr std::string_view kLevels = ".:-=+*#%@";

// Bucket b covers columns [b*n/w, (b+1)*n/w).
std::vector<Space> bucket_max(const std::vector<Space>& v, std::size_t width) {
  if (v.size() <= width) return v;
  std::vector<Space> out(width, 0);
  for (std::size_t b = 0; b < width; ++b) {
    const std::size_t lo = b * v.size() / width;
    const std::size_t hi = (b + 1) * v.size() / width;
    out[b] = *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(lo),
                               v.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return out;
}

std::size_t label_width(const std::vector<std::string>& ids) {
  std::size_t w = 3;
  for (const auto& id : ids) w = std::max(w, id.size());
  return w;
}

}  // namespace

std::string render_curves(const ProcessSet& set, std::size_t width, std::size_t height) {
  std::ostringstream out;
  for (const auto& p : set) {
    const std::vector<Space> cols = bucket_max(p.trace(), width);
    const Space top = std::max<Space>(1, *std::max_element(cols.begin(), cols.end()));
    out << p.id() << "  max " << top << "\n";
    for (std::size_t row = height; row >= 1; --row) {
      out << "  |";
      for (Space v : cols) {
        // A column is filled up to ceil(v * height / top).
        const auto filled = static_cast<std::size_t>(
            (static_cast<__int128>(v) * static_cast<__int128>(height) + top - 1) / top);
        out << (filled >= row ? '#' : ' ');
      }
      out << "\n";
    }
    out << "  +" << std::string(cols.size(), '-') << "\n";
    if (cols.size() < p.length()) {
      out << "  note: " << p.length() << " elements downsampled to " << cols.size()
          << " columns (bucket maximum)\n";
    }
  }
  return out.str();
}

std::string render_schedule(const std::vector<std::string>& ids,
                            const std::vector<std::vector<Space>>& steps,
                            std::size_t width) {
  std::ostringstream out;
  if (steps.empty()) return "empty schedule\n";
  const std::size_t n = ids.size();

  std::vector<Space> sums;
  for (const auto& row : steps) {
    Space s = 0;
    for (Space v : row) s = checked_add(s, v);
    sums.push_back(s);
  }
  const auto peak_it = std::max_element(sums.begin(), sums.end());
  const Space peak = *peak_it;
  const std::size_t peak_step = static_cast<std::size_t>(peak_it - sums.begin()) + 1;

  // Downsampling keeps the step with the largest sum of each bucket.
  std::vector<std::size_t> picked;
  if (steps.size() <= width) {
    for (std::size_t t = 0; t < steps.size(); ++t) picked.push_back(t);
  } else {
    for (std::size_t b = 0; b < width; ++b) {
      const std::size_t lo = b * steps.size() / width;
      const std::size_t hi = (b + 1) * steps.size() / width;
      picked.push_back(static_cast<std::size_t>(
          std::max_element(sums.begin() + static_cast<std::ptrdiff_t>(lo),
                           sums.begin() + static_cast<std::ptrdiff_t>(hi)) -
          sums.begin()));
    }
  }

  Space top = 1;
  for (const auto& row : steps) {
    for (Space v : row) top = std::max(top, v);
  }
  const std::size_t lw = label_width(ids);
  auto pad = [&](const std::string& s) { return s + std::string(lw - s.size(), ' '); };

  for (std::size_t k = 0; k < n; ++k) {
    out << pad(ids[k]) << " |";
    for (std::size_t t : picked) {
      const Space v = steps[t][k];
      if (v == 0) {
        out << ' ';
      } else {
        const auto level = static_cast<std::size_t>(
            static_cast<__int128>(v) * static_cast<__int128>(kLevels.size() - 1) / top);
        out << kLevels[level];
      }
    }
    out << "|\n";
  }
  out << pad("") << " +" << std::string(picked.size(), '-') << "+\n";
  out << pad("pk") << "  ";
  for (std::size_t t : picked) out << (sums[t] == peak ? '^' : ' ');
  out << "\n";
  out << "glyphs " << kLevels << " scale values up to " << top << "; blank is 0\n";
  out << "steps " << steps.size() << ", peak step " << peak_step << " with column sum "
      << peak << "\n";
  if (picked.size() < steps.size()) {
    out << "note: " << steps.size() << " steps downsampled to " << picked.size()
        << " columns (bucket with the largest sum)\n";
  }
  return out.str();
}

}  // namespace spacesched::cli
