//
// Copyright 2026 The dpgini Authors
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
//

#include "dpgini/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dpgini::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void Require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("oracle size guard: " + what);
}

// Calls fn(indices) for every strictly increasing k-tuple drawn from [0, n).
template <typename Fn>
void ForEachCombination(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(std::span<const std::size_t>(idx));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

// Calls fn(indices) for every non-decreasing k-tuple drawn from [0, m).
template <typename Fn>
void ForEachMultiset(std::size_t m, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k, 0);
  if (m == 0 && k > 0) return;
  for (;;) {
    fn(std::span<const std::size_t>(idx));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[pos - 1];
  }
}

bool IsContiguous(std::span<const std::size_t> idx) {
  return idx.empty() || idx.back() - idx.front() + 1 == idx.size();
}

// Removed ranks are a prefix plus a suffix of [0, n).
bool IsTailPair(std::span<const std::size_t> idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t prefix = 0;
  while (prefix < k && idx[prefix] == prefix) ++prefix;
  for (std::size_t t = prefix; t < k; ++t) {
    if (idx[t] != n - k + t) return false;
  }
  return true;
}

double SortedGini(std::vector<double>& buf) {
  std::sort(buf.begin(), buf.end());
  return GiniOfSorted(buf);
}

// Gini of sorted `base` with `v` inserted, in one pass.
double GiniWithInsert(std::span<const double> base, double v) {
  const std::size_t n = base.size() + 1;
  const double nn = static_cast<double>(n);
  double num = 0.0;
  double total = v;
  std::size_t rank = 1;
  bool placed = false;
  for (double x : base) {
    if (!placed && v <= x) {
      num += (2.0 * static_cast<double>(rank++) - nn - 1.0) * v;
      placed = true;
    }
    num += (2.0 * static_cast<double>(rank++) - nn - 1.0) * x;
    total += x;
  }
  if (!placed) num += (2.0 * static_cast<double>(rank) - nn - 1.0) * v;
  if (!(total > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return num / ((nn - 1.0) * total);
}

double SortedLocalSensitivity(std::span<const double> sorted,
                              const std::vector<double>& grid) {
  const double g0 = GiniOfSorted(sorted);
  if (std::isnan(g0)) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> base(sorted.size() - 1);
  double best = 0.0;
  for (std::size_t p = 0; p < sorted.size(); ++p) {
    if (p > 0 && sorted[p] == sorted[p - 1]) continue;  // same neighbours
    std::copy(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(p),
              base.begin());
    std::copy(sorted.begin() + static_cast<std::ptrdiff_t>(p) + 1, sorted.end(),
              base.begin() + static_cast<std::ptrdiff_t>(p));
    for (double v : grid) {
      const double g = GiniWithInsert(base, v);
      if (!std::isnan(g)) best = std::max(best, std::abs(g - g0));
    }
  }
  return best;
}

}  // namespace

GridSpec GridSpec::ForDataset(const SortedDataset& dataset,
                              std::span<const double> extra) {
  const BoundedDomain& d = dataset.domain();
  std::vector<double> pts(dataset.values().begin(), dataset.values().end());
  pts.push_back(d.lower());
  pts.push_back(d.upper());
  for (double v : extra) {
    if (!d.Contains(v)) throw ConfigError("grid point outside the domain");
    pts.push_back(v);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return GridSpec(std::move(pts));
}

GridSpec GridSpec::Equispaced(const SortedDataset& dataset, std::size_t count) {
  const BoundedDomain& d = dataset.domain();
  std::vector<double> extra;
  extra.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t =
        count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    extra.push_back(std::min(d.upper(), d.lower() + t * d.width()));
  }
  return ForDataset(dataset, extra);
}

GiniRange BruteExtremalGini(const SortedDataset& dataset, std::size_t k,
                            const GridSpec& grid, SubsetFamily family) {
  const std::size_t n = dataset.size();
  Require(n <= kMaxExtremalN, "n <= " + std::to_string(kMaxExtremalN));
  Require(k <= kMaxExtremalK && k <= n, "k <= 3 and k <= n");
  Require(grid.size() <= kMaxGridSize, "grid <= 64 points");
  const auto& x = dataset.values();
  if (k == 0) {
    const double g = Gini(dataset);
    return {g, g};
  }

  GiniRange out{kInf, -kInf};
  std::vector<double> buf(n);
  std::vector<bool> removed(n);
  ForEachCombination(n, k, [&](std::span<const std::size_t> idx) {
    const bool for_min =
        family == SubsetFamily::kAllSubsets || IsTailPair(idx, n);
    const bool for_max =
        family == SubsetFamily::kAllSubsets || IsContiguous(idx);
    if (!for_min && !for_max) return;
    std::fill(removed.begin(), removed.end(), false);
    for (std::size_t i : idx) removed[i] = true;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!removed[i]) buf[kept++] = x[i];
    }
    ForEachMultiset(grid.size(), k, [&](std::span<const std::size_t> vals) {
      std::vector<double> candidate(buf.begin(),
                                    buf.begin() + static_cast<std::ptrdiff_t>(kept));
      for (std::size_t v : vals) candidate.push_back(grid.points()[v]);
      const double g = SortedGini(candidate);
      if (std::isnan(g)) return;
      if (for_min) out.min = std::min(out.min, g);
      if (for_max) out.max = std::max(out.max, g);
    });
  });
  return out;
}

double BruteLocalSensitivity(std::span<const double> values,
                             const GridSpec& grid) {
  Require(values.size() >= 2 && values.size() <= kMaxExtremalN,
          "2 <= n <= " + std::to_string(kMaxExtremalN));
  Require(grid.size() <= kMaxGridSize, "grid <= 64 points");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return SortedLocalSensitivity(sorted, grid.points());
}

double BruteAk(const SortedDataset& dataset, std::size_t k,
               const GridSpec& grid) {
  const std::size_t n = dataset.size();
  Require(n <= kMaxAkN, "n <= " + std::to_string(kMaxAkN));
  Require(k <= kMaxAkK, "k <= " + std::to_string(kMaxAkK));
  Require(grid.size() <= kMaxGridSize, "grid <= 64 points");
  const auto& x = dataset.values();
  const auto& pts = grid.points();

  double best = SortedLocalSensitivity(x, pts);
  std::vector<bool> removed(n);
  std::vector<double> candidate;
  for (std::size_t d = 1; d <= k; ++d) {
    ForEachCombination(n, d, [&](std::span<const std::size_t> idx) {
      std::fill(removed.begin(), removed.end(), false);
      for (std::size_t i : idx) removed[i] = true;
      ForEachMultiset(pts.size(), d, [&](std::span<const std::size_t> vals) {
        candidate.clear();
        for (std::size_t i = 0; i < n; ++i) {
          if (!removed[i]) candidate.push_back(x[i]);
        }
        for (std::size_t v : vals) candidate.push_back(pts[v]);
        std::sort(candidate.begin(), candidate.end());
        const double ls = SortedLocalSensitivity(candidate, pts);
        if (!std::isnan(ls)) best = std::max(best, ls);
      });
    });
  }
  return best;
}

}  // namespace dpgini::oracle
