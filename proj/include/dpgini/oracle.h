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

#ifndef DPGINI_ORACLE_H_
#define DPGINI_ORACLE_H_

// Exhaustive reference searches for small instances. They share no code with
// the prefix-table searches beyond the plain Gini formula, so agreement
// between the two is evidence for both.

#include <cstddef>
#include <span>
#include <vector>

#include "dpgini/gini_core.h"

namespace dpgini::oracle {

inline constexpr std::size_t kMaxExtremalN = 10;
inline constexpr std::size_t kMaxExtremalK = 3;
inline constexpr std::size_t kMaxGridSize = 64;
inline constexpr std::size_t kMaxAkN = 8;
inline constexpr std::size_t kMaxAkK = 2;

// Finite ascending set of distinct candidate replacement values inside the
// domain. It always contains L, U and every data value.
class GridSpec {
 public:
  // Data values and bounds plus `extra` (each must lie in the domain).
  static GridSpec ForDataset(const SortedDataset& dataset,
                             std::span<const double> extra = {});
  // Data values and bounds plus `count` equispaced points from L to U.
  static GridSpec Equispaced(const SortedDataset& dataset, std::size_t count);

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  explicit GridSpec(std::vector<double> points) : points_(std::move(points)) {}
  std::vector<double> points_;
};

// Which index subsets to replace.
//   kAllSubsets: every k-subset.
//   kConsecutive: for the max, a contiguous run of ranks; for the min, i
//   lowest and k - i highest ranks (the kept ranks are contiguous).
enum class SubsetFamily { kAllSubsets, kConsecutive };

struct GiniRange {
  double min = 0.0;
  double max = 0.0;
};

// Min and max Gini over all datasets obtained by replacing a k-subset of the
// data with a multiset of k grid values. Requires n <= 10, k <= 3,
// grid <= 64 points; throws ConfigError otherwise.
GiniRange BruteExtremalGini(const SortedDataset& dataset, std::size_t k,
                            const GridSpec& grid,
                            SubsetFamily family = SubsetFamily::kAllSubsets);

// max |g(X) - g(X')| over every X' that changes one value to a grid point.
// Values need not be sorted. Requires n <= 10 and grid <= 64.
double BruteLocalSensitivity(std::span<const double> values,
                             const GridSpec& grid);

// max of BruteLocalSensitivity over every grid-reachable X' within distance
// k of X. A lower bound on the true A^(k). Requires n <= 8 and k <= 2.
double BruteAk(const SortedDataset& dataset, std::size_t k,
               const GridSpec& grid);

}  // namespace dpgini::oracle

#endif  // DPGINI_ORACLE_H_
