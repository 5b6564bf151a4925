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

#include <random>
#include <vector>

#include "dpgini/oracle.h"
#include "gtest/gtest.h"

namespace dpgini {
namespace {

SortedDataset Toy() {
  return MakeDataset({3.0, 6.0, 7.0, 7.5}, BoundedDomain(0.0, 10.0));
}

SortedDataset RandomDataset(std::mt19937_64& rng, std::size_t n, double lo,
                            double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return MakeDataset(v, BoundedDomain(lo, hi));
}

// Exact fractions from exhaustive rational enumeration over a 0.5 grid.
TEST(FastExtremalTest, ToyValues) {
  const SortedDataset x = Toy();
  EXPECT_NEAR(FastMinGini(x, 1), 3.0 / 55.0, 1e-14);
  EXPECT_NEAR(FastMinGini(x, 2), 1.0 / 59.0, 1e-14);
  EXPECT_NEAR(FastMinGini(x, 3), 0.0, 1e-14);
  EXPECT_NEAR(FastMaxGini(x, 1), 17.0 / 33.0, 1e-14);
  EXPECT_NEAR(FastMaxGini(x, 2), 17.0 / 21.0, 1e-14);
  EXPECT_NEAR(FastMaxGini(x, 3), 1.0, 1e-14);
}

TEST(FastExtremalTest, FullReplacement) {
  const SortedDataset x = Toy();
  EXPECT_DOUBLE_EQ(FastMinGini(x, 4), 0.0);
  // n - 1 values at L = 0 and one at U.
  EXPECT_DOUBLE_EQ(FastMaxGini(x, 4), 1.0);
}

TEST(FastExtremalTest, RejectsBadK) {
  const SortedDataset x = Toy();
  EXPECT_THROW(FastMinGini(x, 0), ConfigError);
  EXPECT_THROW(FastMaxGini(x, 5), ConfigError);
}

TEST(FastExtremalTest, Averages) {
  const auto t = BuildPrefixTables(Toy());
  EXPECT_DOUBLE_EQ(MinAverage(t, 1, 0.0), 4.0);
  EXPECT_DOUBLE_EQ(MaxAverage(t, 1, 10.0), 7.625);
  EXPECT_DOUBLE_EQ(MinAverage(t, 2, 0.0), 2.25);
  EXPECT_DOUBLE_EQ(MaxAverage(t, 2, 10.0), 8.625);
}

TEST(ExtremalSummaryTest, ToySummaries) {
  const ExtremalSummary s0 = ComputeExtremalSummary(Toy(), 0);
  EXPECT_NEAR(s0.min_g, 29.0 / 141.0, 1e-15);
  EXPECT_NEAR(s0.max_g, 29.0 / 141.0, 1e-15);
  EXPECT_DOUBLE_EQ(s0.min_mean, 5.875);
  EXPECT_DOUBLE_EQ(s0.max_mean, 5.875);

  const ExtremalSummary s2 = ComputeExtremalSummary(Toy(), 2);
  EXPECT_EQ(s2.k, 2u);
  EXPECT_NEAR(s2.min_g, 1.0 / 59.0, 1e-14);
  EXPECT_NEAR(s2.max_g, 17.0 / 21.0, 1e-14);
  EXPECT_DOUBLE_EQ(s2.min_mean, 2.25);
  EXPECT_DOUBLE_EQ(s2.max_mean, 8.625);
}

TEST(ExtremalSummaryTest, MonotoneInK) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = RandomDataset(rng, 30, 0.0, 50.0);
    const auto t = BuildPrefixTables(x);
    ExtremalSummary prev = ComputeExtremalSummary(t, 0, x.domain());
    for (std::size_t k = 1; k <= 10; ++k) {
      const ExtremalSummary s = ComputeExtremalSummary(t, k, x.domain());
      EXPECT_LE(s.min_g, prev.min_g + 1e-12);
      EXPECT_GE(s.max_g, prev.max_g - 1e-12);
      EXPECT_LE(s.min_mean, prev.min_mean + 1e-12);
      EXPECT_GE(s.max_mean, prev.max_mean - 1e-12);
      prev = s;
    }
  }
}

TEST(FastExtremalTest, TernaryMatchesLinearScan) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + trial % 60;
    const auto x = RandomDataset(rng, n, 0.0, 1.0 + trial);
    const auto t = BuildPrefixTables(x);
    for (std::size_t k = 1; k < n && k <= 6; ++k) {
      EXPECT_NEAR(FastMinGini(t, k, MinSearch::kTernary),
                  FastMinGini(t, k, MinSearch::kLinearScan), 1e-12)
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(FastExtremalTest, MatchesBruteForceWithPositiveLowerBound) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = RandomDataset(rng, 5, 2.0, 9.0);
    const auto grid = oracle::GridSpec::Equispaced(x, 8);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto brute = oracle::BruteExtremalGini(x, k, grid);
      EXPECT_NEAR(FastMinGini(x, k), brute.min, 1e-9);
      EXPECT_NEAR(FastMaxGini(x, k), brute.max, 1e-9);
    }
  }
}

TEST(FastExtremalTest, TiesAreHandled) {
  const auto x = MakeDataset({2.0, 2.0, 2.0, 5.0, 5.0}, BoundedDomain(0.0, 6.0));
  const auto grid = oracle::GridSpec::ForDataset(x);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto brute = oracle::BruteExtremalGini(x, k, grid);
    EXPECT_NEAR(FastMinGini(x, k), brute.min, 1e-12);
    EXPECT_NEAR(FastMaxGini(x, k), brute.max, 1e-12);
  }
}

}  // namespace
}  // namespace dpgini
