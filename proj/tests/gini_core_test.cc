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

#include "dpgini/gini_core.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace dpgini {
namespace {

const BoundedDomain kToyDomain(0.0, 10.0);

SortedDataset Toy() { return MakeDataset({7.5, 3.0, 7.0, 6.0}, kToyDomain); }

TEST(BoundedDomainTest, RejectsInvalidBounds) {
  EXPECT_THROW(BoundedDomain(-1.0, 1.0), ConfigError);
  EXPECT_THROW(BoundedDomain(2.0, 2.0), ConfigError);
  EXPECT_THROW(BoundedDomain(0.0, std::numeric_limits<double>::infinity()),
               ConfigError);
  const BoundedDomain d(1.0, 3.0);
  EXPECT_DOUBLE_EQ(d.width(), 2.0);
  EXPECT_TRUE(d.Contains(1.0));
  EXPECT_FALSE(d.Contains(3.5));
  EXPECT_DOUBLE_EQ(d.Scaled(2.0).upper(), 6.0);
}

TEST(MakeDatasetTest, SortsAndCachesMean) {
  const SortedDataset x = Toy();
  EXPECT_EQ(x.values(), (std::vector<double>{3.0, 6.0, 7.0, 7.5}));
  EXPECT_DOUBLE_EQ(x.total(), 23.5);
  EXPECT_DOUBLE_EQ(x.mean(), 5.875);
  EXPECT_DOUBLE_EQ(x.at_rank(1), 3.0);
  EXPECT_DOUBLE_EQ(x.at_rank(4), 7.5);
}

TEST(MakeDatasetTest, ReportsDataErrors) {
  EXPECT_THROW(MakeDataset({1.0}, kToyDomain), DataError);
  EXPECT_THROW(MakeDataset({1.0, 11.0}, kToyDomain), DataError);
  EXPECT_THROW(MakeDataset({0.0, 0.0, 0.0}, kToyDomain), DataError);
}

// Exact rational values from a fraction-arithmetic enumeration.
TEST(GiniTest, ToyExactValues) {
  EXPECT_NEAR(Gini(Toy()), 29.0 / 141.0, 1e-15);
  const std::vector<double> toy{3.0, 6.0, 7.0, 7.5};
  EXPECT_NEAR(GiniPairwise(toy), 29.0 / 188.0, 1e-15);
  EXPECT_NEAR(GiniOfSorted(toy), 29.0 / 141.0, 1e-15);
}

TEST(GiniTest, ConstantAndSingleEarner) {
  EXPECT_DOUBLE_EQ(Gini(MakeDataset({4.0, 4.0, 4.0}, kToyDomain)), 0.0);
  // One earner among n: rank-weighted form gives exactly 1.
  EXPECT_DOUBLE_EQ(Gini(MakeDataset({0.0, 0.0, 0.0, 5.0}, kToyDomain)), 1.0);
  const std::vector<double> one{0.0, 0.0, 0.0, 5.0};
  EXPECT_DOUBLE_EQ(GiniPairwise(one), 0.75);
  EXPECT_TRUE(std::isnan(GiniOfSorted(std::vector<double>{0.0, 0.0})));
}

TEST(GiniTest, PairwiseRelationHoldsOnRandomData) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 40;
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    const auto d = MakeDataset(v, BoundedDomain(0.0, 100.0));
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(GiniPairwise(v) * nn, Gini(d) * (nn - 1.0), 1e-12);
  }
}

TEST(GiniTest, ScaleInvariant) {
  const SortedDataset a = Toy();
  const SortedDataset b =
      MakeDataset({30.0, 60.0, 70.0, 75.0}, kToyDomain.Scaled(10.0));
  EXPECT_NEAR(Gini(a), Gini(b), 1e-15);
}

TEST(PrefixTablesTest, ToyTables) {
  const PrefixTables t = BuildPrefixTables(Toy());
  ASSERT_EQ(t.n, 4u);
  EXPECT_EQ(t.p, (std::vector<double>{0.0, 3.0, 9.0, 16.0, 23.5}));
  EXPECT_EQ(t.c, (std::vector<double>{0.0, -9.0, -15.0, -8.0, 14.5}));
  EXPECT_EQ(t.r, (std::vector<double>{0.0, 3.0, 15.0, 36.0, 66.0}));
  const PrefixTables tc = BuildPrefixTables(Toy(), Summation::kCompensated);
  EXPECT_EQ(tc.c, t.c);
}

// Each window formula is checked against the dataset it describes, built
// explicitly and scored with the plain formula.
TEST(WindowGiniTest, MaxWindowMatchesMaterializedDataset) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  const BoundedDomain dom(0.0, 20.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 9;
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    const auto d = MakeDataset(v, dom);
    const auto t = BuildPrefixTables(d);
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t s = 0; s + k <= n; ++s) {
        for (std::size_t j = 0; j <= k; ++j) {
          std::vector<double> y;
          for (std::size_t r = 0; r < n; ++r) {
            if (r < s || r >= s + k) y.push_back(d.values()[r]);
          }
          y.insert(y.end(), j, dom.lower());
          y.insert(y.end(), k - j, dom.upper());
          std::sort(y.begin(), y.end());
          const double expect = GiniOfSorted(y);
          const double got = WindowGiniMax(t, s, j, k, dom);
          if (std::isnan(expect)) {
            EXPECT_TRUE(std::isnan(got));
          } else {
            EXPECT_NEAR(got, expect, 1e-12);
          }
        }
      }
    }
  }
}

TEST(WindowGiniTest, MinWindowMatchesMaterializedDataset) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 9;
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    const auto d = MakeDataset(v, BoundedDomain(0.0, 20.0));
    const auto t = BuildPrefixTables(d);
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t i = 0; i <= k; ++i) {
        for (std::size_t rank = i + 1; rank <= n - k + i; ++rank) {
          std::vector<double> y(d.values().begin() + i,
                                d.values().begin() + (n - k + i));
          y.insert(y.end(), k, d.at_rank(rank));
          std::sort(y.begin(), y.end());
          EXPECT_NEAR(WindowGiniMin(t, i, rank, k), GiniOfSorted(y), 1e-12);
        }
      }
    }
  }
}

TEST(WindowGiniTest, RejectsInvalidIndices) {
  const auto t = BuildPrefixTables(Toy());
  EXPECT_THROW(WindowGiniMax(t, 3, 0, 2, kToyDomain), std::out_of_range);
  EXPECT_THROW(WindowGiniMax(t, 0, 3, 2, kToyDomain), std::out_of_range);
  EXPECT_THROW(WindowGiniMin(t, 0, 4, 1), std::out_of_range);
  EXPECT_THROW(WindowGiniMin(t, 2, 1, 1), std::out_of_range);
}

TEST(WindowGiniTest, ToyExtremesAtOneReplacement) {
  const auto t = BuildPrefixTables(Toy());
  // Replacing 7 by 0 gives (0, 3, 6, 7.5).
  EXPECT_NEAR(WindowGiniMax(t, 2, 1, 1, kToyDomain), 17.0 / 33.0, 1e-15);
  // Keep 6, 7, 7.5 and add a second 7.
  EXPECT_NEAR(WindowGiniMin(t, 1, 3, 1), 3.0 / 55.0, 1e-15);
}

}  // namespace
}  // namespace dpgini
