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

#ifndef DPGINI_GINI_CORE_H_
#define DPGINI_GINI_CORE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "dpgini/errors.h"

namespace dpgini {

// Closed interval [lower, upper] that every income is known to lie in.
// Requires 0 <= lower < upper < inf.
class BoundedDomain {
 public:
  BoundedDomain(double lower, double upper);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double width() const { return upper_ - lower_; }
  bool Contains(double v) const { return v >= lower_ && v <= upper_; }

  // Same domain with both ends multiplied by c > 0.
  BoundedDomain Scaled(double c) const;

 private:
  double lower_;
  double upper_;
};

enum class Summation { kNaive, kCompensated };

// Incomes sorted ascending and checked against a domain. The mean is cached.
// Immutable after construction.
class SortedDataset {
 public:
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double mean() const { return mean_; }
  double total() const { return total_; }
  const BoundedDomain& domain() const { return domain_; }

  // 1-based rank access, matching the order-statistic notation x_1..x_n.
  double at_rank(std::size_t rank) const { return values_[rank - 1]; }

 private:
  friend SortedDataset MakeDataset(std::vector<double> values,
                                   const BoundedDomain& domain,
                                   Summation summation);
  SortedDataset(std::vector<double> values, BoundedDomain domain, double total)
      : values_(std::move(values)),
        domain_(domain),
        total_(total),
        mean_(total / static_cast<double>(values_.size())) {}

  std::vector<double> values_;
  BoundedDomain domain_;
  double total_;
  double mean_;
};

// Sorts (stable) and validates. Throws DataError on an out-of-domain value;
// also requires n >= 2 and a positive mean.
SortedDataset MakeDataset(std::vector<double> values,
                          const BoundedDomain& domain,
                          Summation summation = Summation::kNaive);

// Rank-weighted Gini: sum_i (2i - n - 1) x_i / (n * mean * (n - 1)).
// This is the form used by every search and bound in the library.
double Gini(const SortedDataset& dataset);

// Same formula over values that are already sorted ascending. No validation
// beyond n >= 2 and a positive total; used by the oracles.
double GiniOfSorted(std::span<const double> sorted);

// Mean-absolute-difference Gini: sum_ij |z_i - z_j| / (2 n^2 mean).
// Equals Gini() * (n - 1) / n. Input need not be sorted.
double GiniPairwise(std::span<const double> values);

// Cumulative tables over the sorted values, each with a zero sentinel at 0:
//   P_i = sum_{t<=i} x_t
//   C_i = sum_{t<=i} (2t - n - 1) x_t
//   R_i = sum_{t<=i} t x_t
// `x` keeps a copy of the sorted values (x[0] is an unused sentinel).
struct PrefixTables {
  std::size_t n = 0;
  std::vector<double> x;
  std::vector<double> p;
  std::vector<double> c;
  std::vector<double> r;
};

PrefixTables BuildPrefixTables(const SortedDataset& dataset,
                               Summation summation = Summation::kNaive);

// Gini of the dataset obtained by deleting ranks s+1..s+k and appending
// `num_lower` copies of domain.lower() and k - num_lower copies of
// domain.upper(). Valid for 0 <= s <= n - k and 0 <= num_lower <= k.
// Throws std::out_of_range otherwise.
double WindowGiniMax(const PrefixTables& tables, std::size_t s,
                     std::size_t num_lower, std::size_t k,
                     const BoundedDomain& domain);

// Gini of the dataset obtained by keeping the block of ranks
// num_low+1 .. n-k+num_low and adding k copies of x_{rank}, where rank lies
// inside that block. Throws std::out_of_range on invalid indices.
double WindowGiniMin(const PrefixTables& tables, std::size_t num_low,
                     std::size_t rank, std::size_t k);

}  // namespace dpgini

#endif  // DPGINI_GINI_CORE_H_
