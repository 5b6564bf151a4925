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

#include "dpgini/extremal_search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpgini {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckReplacementCount(std::size_t k, std::size_t n, const char* who) {
  if (k < 1 || k > n) {
    throw ConfigError(std::string(who) + ": replacement count k=" +
                      std::to_string(k) + " must lie in [1, " +
                      std::to_string(n) + "]");
  }
}

// Undefined (all-zero) candidates never win a min or max.
double OrInf(double g) { return std::isnan(g) ? kInf : g; }

std::size_t TernaryArgMin(const PrefixTables& t, std::size_t num_low,
                          std::size_t k, std::size_t lo, std::size_t hi) {
  auto g = [&](std::size_t j) { return OrInf(WindowGiniMin(t, num_low, j, k)); };
  while (hi - lo > 3) {
    const std::size_t third = (hi - lo) / 3;
    const std::size_t m1 = lo + third;
    const std::size_t m2 = hi - third;
    if (g(m1) < g(m2)) {
      hi = m2 - 1;
    } else {
      lo = m1 + 1;
    }
  }
  std::size_t best = lo;
  for (std::size_t j = lo + 1; j <= hi; ++j) {
    if (g(j) < g(best)) best = j;
  }
  return best;
}

}  // namespace

double FastMinGini(const PrefixTables& t, std::size_t k, MinSearch search) {
  const std::size_t n = t.n;
  CheckReplacementCount(k, n, "FastMinGini");
  if (k == n) return 0.0;
  double best = kInf;
  for (std::size_t num_low = 0; num_low <= k; ++num_low) {
    const std::size_t first = num_low + 1;
    const std::size_t last = n - k + num_low;
    if (search == MinSearch::kTernary) {
      const std::size_t j = TernaryArgMin(t, num_low, k, first, last);
      best = std::min(best, OrInf(WindowGiniMin(t, num_low, j, k)));
    } else {
      for (std::size_t j = first; j <= last; ++j) {
        best = std::min(best, OrInf(WindowGiniMin(t, num_low, j, k)));
      }
    }
  }
  return best;
}

double FastMinGini(const SortedDataset& dataset, std::size_t k,
                   MinSearch search) {
  return FastMinGini(BuildPrefixTables(dataset), k, search);
}

double FastMaxGini(const PrefixTables& t, std::size_t k,
                   const BoundedDomain& domain) {
  const std::size_t n = t.n;
  CheckReplacementCount(k, n, "FastMaxGini");
  double best = -kInf;
  for (std::size_t s = 0; s + k <= n; ++s) {
    for (std::size_t num_lower = 0; num_lower <= k; ++num_lower) {
      const double g = WindowGiniMax(t, s, num_lower, k, domain);
      if (!std::isnan(g) && g > best) best = g;
    }
  }
  return best;
}

double FastMaxGini(const SortedDataset& dataset, std::size_t k) {
  return FastMaxGini(BuildPrefixTables(dataset), k, dataset.domain());
}

double MinAverage(const PrefixTables& t, std::size_t k, double lower) {
  if (k > t.n) throw ConfigError("MinAverage: k exceeds n");
  const double n = static_cast<double>(t.n);
  return (t.p[t.n - k] + static_cast<double>(k) * lower) / n;
}

double MaxAverage(const PrefixTables& t, std::size_t k, double upper) {
  if (k > t.n) throw ConfigError("MaxAverage: k exceeds n");
  const double n = static_cast<double>(t.n);
  return (t.p[t.n] - t.p[k] + static_cast<double>(k) * upper) / n;
}

ExtremalSummary ComputeExtremalSummary(const PrefixTables& t, std::size_t k,
                                       const BoundedDomain& domain,
                                       MinSearch search) {
  ExtremalSummary out;
  out.k = k;
  if (k == 0) {
    const double n = static_cast<double>(t.n);
    const double g = t.c[t.n] / ((n - 1.0) * t.p[t.n]);
    out.min_g = out.max_g = g;
    out.min_mean = out.max_mean = t.p[t.n] / n;
    return out;
  }
  out.min_g = FastMinGini(t, k, search);
  out.max_g = FastMaxGini(t, k, domain);
  out.min_mean = MinAverage(t, k, domain.lower());
  out.max_mean = MaxAverage(t, k, domain.upper());
  return out;
}

ExtremalSummary ComputeExtremalSummary(const SortedDataset& dataset,
                                       std::size_t k, MinSearch search) {
  return ComputeExtremalSummary(BuildPrefixTables(dataset), k,
                                dataset.domain(), search);
}

}  // namespace dpgini
