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

#ifndef DPGINI_EXTREMAL_SEARCH_H_
#define DPGINI_EXTREMAL_SEARCH_H_

#include <cstddef>

#include "dpgini/gini_core.h"

namespace dpgini {

// Extremes of the Gini index and of the mean over every dataset reachable
// from X by replacing exactly k values with values in [L, U].
struct ExtremalSummary {
  std::size_t k = 0;
  double min_g = 0.0;
  double max_g = 0.0;
  double min_mean = 0.0;
  double max_mean = 0.0;
};

// Inner search over the replacement rank in FastMinGini. The linear scan is
// exhaustive; the ternary search assumes the window Gini is unimodal in the
// replacement rank.
enum class MinSearch { kLinearScan, kTernary };

// Minimum Gini after replacing k values. The optimum keeps a consecutive
// block of n - k order statistics (i from the bottom and k - i from the top
// removed) and sets all k replacements to one value of the kept block.
// Requires 1 <= k <= n; k == n returns 0.
double FastMinGini(const PrefixTables& tables, std::size_t k,
                   MinSearch search = MinSearch::kLinearScan);
double FastMinGini(const SortedDataset& dataset, std::size_t k,
                   MinSearch search = MinSearch::kLinearScan);

// Maximum Gini after replacing k values. The optimum removes a consecutive
// block of k order statistics and replaces it with copies of L and U.
// Requires 1 <= k <= n.
double FastMaxGini(const PrefixTables& tables, std::size_t k,
                   const BoundedDomain& domain);
double FastMaxGini(const SortedDataset& dataset, std::size_t k);

// (sum of the n - k smallest + k L) / n and (sum of the n - k largest + k U) / n.
// Requires k <= n.
double MinAverage(const PrefixTables& tables, std::size_t k, double lower);
double MaxAverage(const PrefixTables& tables, std::size_t k, double upper);

// All four extremes at distance k. k == 0 gives (g, g, mean, mean).
ExtremalSummary ComputeExtremalSummary(
    const PrefixTables& tables, std::size_t k, const BoundedDomain& domain,
    MinSearch search = MinSearch::kLinearScan);
ExtremalSummary ComputeExtremalSummary(
    const SortedDataset& dataset, std::size_t k,
    MinSearch search = MinSearch::kLinearScan);

}  // namespace dpgini

#endif  // DPGINI_EXTREMAL_SEARCH_H_
