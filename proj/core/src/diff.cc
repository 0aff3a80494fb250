// Copyright 2026 The bineq Authors
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

#include "bineq/diff.h"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <unordered_map>

namespace bineq {
namespace {

class Myers {
 public:
  Myers(std::vector<int> a, std::vector<int> b)
      : a_(std::move(a)), b_(std::move(b)), del_(a_.size()), ins_(b_.size()) {}

  void Run() { Compare(0, a_.size(), 0, b_.size()); }

  const std::vector<bool>& deleted() const { return del_; }
  const std::vector<bool>& inserted() const { return ins_; }

 private:
  void Compare(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1) {
    while (a0 < a1 && b0 < b1 && a_[a0] == b_[b0]) ++a0, ++b0;
    while (a0 < a1 && b0 < b1 && a_[a1 - 1] == b_[b1 - 1]) --a1, --b1;
    if (a0 == a1) {
      for (std::size_t j = b0; j < b1; ++j) ins_[j] = true;
      return;
    }
    if (b0 == b1) {
      for (std::size_t i = a0; i < a1; ++i) del_[i] = true;
      return;
    }
    auto [x0, y0, x1, y1] = MiddleSnake(a0, a1, b0, b1);
    Compare(a0, a0 + x0, b0, b0 + y0);
    Compare(a0 + x1, a1, b0 + y1, b1);
  }

  // Returns the start and end of the middle snake, relative to (a0, b0).
  std::array<std::size_t, 4> MiddleSnake(std::size_t a0, std::size_t a1, std::size_t b0,
                                         std::size_t b1) {
    const long n = static_cast<long>(a1 - a0);
    const long m = static_cast<long>(b1 - b0);
    const long delta = n - m;
    const bool odd = (delta & 1) != 0;
    const long max = (n + m + 1) / 2;
    const long off = max + 1;
    std::vector<long> vf(2 * max + 3, 0), vb(2 * max + 3, 0);
    for (long d = 0; d <= max; ++d) {
      for (long k = -d; k <= d; k += 2) {
        long x = (k == -d || (k != d && vf[off + k - 1] < vf[off + k + 1])) ? vf[off + k + 1]
                                                                            : vf[off + k - 1] + 1;
        long y = x - k;
        const long sx = x, sy = y;
        while (x < n && y < m && a_[a0 + x] == b_[b0 + y]) ++x, ++y;
        vf[off + k] = x;
        const long c = delta - k;
        if (odd && c >= -(d - 1) && c <= d - 1 && x + vb[off + c] >= n) {
          return {static_cast<std::size_t>(sx), static_cast<std::size_t>(sy),
                  static_cast<std::size_t>(x), static_cast<std::size_t>(y)};
        }
      }
      for (long k = -d; k <= d; k += 2) {
        long x = (k == -d || (k != d && vb[off + k - 1] < vb[off + k + 1])) ? vb[off + k + 1]
                                                                            : vb[off + k - 1] + 1;
        long y = x - k;
        const long sx = x, sy = y;
        while (x < n && y < m && a_[a1 - 1 - x] == b_[b1 - 1 - y]) ++x, ++y;
        vb[off + k] = x;
        const long c = delta - k;
        if (!odd && c >= -d && c <= d && x + vf[off + c] >= n) {
          return {static_cast<std::size_t>(n - x), static_cast<std::size_t>(m - y),
                  static_cast<std::size_t>(n - sx), static_cast<std::size_t>(m - sy)};
        }
      }
    }
    return {0, 0, static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
  }

  std::vector<int> a_, b_;
  std::vector<bool> del_, ins_;
};

std::string Range(std::size_t start, std::size_t count) {
  if (count == 1) return fmt::format("{}", start + 1);
  if (count == 0) return fmt::format("{},0", start);
  return fmt::format("{},{}", start + 1, count);
}

}  // namespace

std::vector<Edit> DiffLines(const std::vector<std::string>& left,
                            const std::vector<std::string>& right) {
  std::unordered_map<std::string_view, int> ids;
  auto intern = [&](const std::vector<std::string>& lines) {
    std::vector<int> out;
    out.reserve(lines.size());
    for (const auto& l : lines) {
      out.push_back(ids.try_emplace(l, static_cast<int>(ids.size())).first->second);
    }
    return out;
  };
  std::vector<int> a = intern(left);
  std::vector<int> b = intern(right);
  Myers myers(std::move(a), std::move(b));
  myers.Run();

  std::vector<Edit> edits;
  std::size_t i = 0, j = 0;
  while (i < left.size() || j < right.size()) {
    if (i < left.size() && myers.deleted()[i]) {
      edits.push_back({EditKind::kDelete, i++, j});
    } else if (j < right.size() && myers.inserted()[j]) {
      edits.push_back({EditKind::kInsert, i, j++});
    } else {
      edits.push_back({EditKind::kKeep, i++, j++});
    }
  }
  return edits;
}

std::string UnifiedDiff(const std::vector<std::string>& left, const std::vector<std::string>& right,
                        std::string_view left_name, std::string_view right_name, int context) {
  std::vector<Edit> edits = DiffLines(left, right);
  const std::size_t ctx = static_cast<std::size_t>(std::max(context, 0));
  std::string out;
  std::size_t e = 0;
  while (e < edits.size()) {
    while (e < edits.size() && edits[e].kind == EditKind::kKeep) ++e;
    if (e == edits.size()) break;
    std::size_t begin = e >= ctx ? e - ctx : 0;
    std::size_t end = e;
    // Extend the hunk while the next change is within 2 * context lines.
    while (end < edits.size()) {
      while (end < edits.size() && edits[end].kind != EditKind::kKeep) ++end;
      std::size_t keep = end;
      while (keep < edits.size() && edits[keep].kind == EditKind::kKeep) ++keep;
      if (keep == edits.size() || keep - end > 2 * ctx) {
        end = std::min(end + ctx, edits.size());
        break;
      }
      end = keep;
    }
    if (out.empty()) out = fmt::format("--- {}\n+++ {}\n", left_name, right_name);
    std::size_t lcount = 0, rcount = 0;
    for (std::size_t k = begin; k < end; ++k) {
      if (edits[k].kind != EditKind::kInsert) ++lcount;
      if (edits[k].kind != EditKind::kDelete) ++rcount;
    }
    out += fmt::format("@@ -{} +{} @@\n", Range(edits[begin].left, lcount),
                       Range(edits[begin].right, rcount));
    for (std::size_t k = begin; k < end; ++k) {
      switch (edits[k].kind) {
        case EditKind::kKeep:
          out += ' ' + left[edits[k].left] + '\n';
          break;
        case EditKind::kDelete:
          out += '-' + left[edits[k].left] + '\n';
          break;
        case EditKind::kInsert:
          out += '+' + right[edits[k].right] + '\n';
          break;
      }
    }
    e = end;
  }
  return out;
}

}  // namespace bineq
