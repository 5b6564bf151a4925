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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dpgini {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void Add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class Accumulator {
 public:
  explicit Accumulator(Summation mode) : mode_(mode) {}
  void Add(double v) {
    if (mode_ == Summation::kCompensated) {
      compensated_.Add(v);
    } else {
      naive_ += v;
    }
  }
  double value() const {
    return mode_ == Summation::kCompensated ? compensated_.value() : naive_;
  }

 private:
  Summation mode_;
  double naive_ = 0.0;
  CompensatedSum compensated_;
};

std::string FormatValue(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

BoundedDomain::BoundedDomain(double lower, double upper)
    : lower_(lower), upper_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw ConfigError("domain bounds must be finite");
  }
  if (lower < 0.0) {
    throw ConfigError("domain lower bound must be non-negative, got " +
                      FormatValue(lower));
  }
  if (!(lower < upper)) {
    throw ConfigError("domain requires lower < upper, got [" +
                      FormatValue(lower) + ", " + FormatValue(upper) + "]");
  }
}

BoundedDomain BoundedDomain::Scaled(double c) const {
  if (!(c > 0.0)) throw ConfigError("domain scale factor must be positive");
  return BoundedDomain(c * lower_, c * upper_);
}

SortedDataset MakeDataset(std::vector<double> values,
                          const BoundedDomain& domain, Summation summation) {
  if (values.size() < 2) {
    throw DataError("at least 2 values are required, got " +
                    std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!domain.Contains(values[i])) {
      throw DataError("value " + FormatValue(values[i]) + " at position " +
                      std::to_string(i) + " lies outside [" +
                      FormatValue(domain.lower()) + ", " +
                      FormatValue(domain.upper()) +
                      "]; clip the data or widen the bounds");
    }
  }
  std::stable_sort(values.begin(), values.end());
  Accumulator total(summation);
  for (double v : values) total.Add(v);
  if (!(total.value() > 0.0)) {
    throw DataError("all values are zero; the Gini index is undefined");
  }
  return SortedDataset(std::move(values), domain, total.value());
}

double GiniOfSorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n < 2) throw std::invalid_argument("Gini needs at least 2 values");
  const double nn = static_cast<double>(n);
  double num = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = 2.0 * static_cast<double>(i + 1) - nn - 1.0;
    num += weight * sorted[i];
    total += sorted[i];
  }
  if (!(total > 0.0)) return kNaN;
  return num / ((nn - 1.0) * total);
}

double Gini(const SortedDataset& dataset) {
  const auto& x = dataset.values();
  const double nn = static_cast<double>(x.size());
  double num = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (2.0 * static_cast<double>(i + 1) - nn - 1.0) * x[i];
  }
  return num / ((nn - 1.0) * dataset.total());
}

double GiniPairwise(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw DataError("Gini needs at least 2 values");
  double abs_diff = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += values[i];
    for (std::size_t j = 0; j < n; ++j) {
      abs_diff += std::abs(values[i] - values[j]);
    }
  }
  if (!(total > 0.0)) {
    throw DataError("all values are zero; the Gini index is undefined");
  }
  const double nn = static_cast<double>(n);
  // 2 n^2 mean == 2 n total
  return abs_diff / (2.0 * nn * total);
}

PrefixTables BuildPrefixTables(const SortedDataset& dataset,
                               Summation summation) {
  const auto& values = dataset.values();
  const std::size_t n = values.size();
  const double nn = static_cast<double>(n);
  PrefixTables t;
  t.n = n;
  t.x.assign(n + 1, 0.0);
  t.p.assign(n + 1, 0.0);
  t.c.assign(n + 1, 0.0);
  t.r.assign(n + 1, 0.0);
  Accumulator p(summation), c(summation), r(summation);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = values[i - 1];
    const double rank = static_cast<double>(i);
    p.Add(x);
    c.Add((2.0 * rank - nn - 1.0) * x);
    r.Add(rank * x);
    t.x[i] = x;
    t.p[i] = p.value();
    t.c[i] = c.value();
    t.r[i] = r.value();
  }
  return t;
}

double WindowGiniMax(const PrefixTables& t, std::size_t s,
                     std::size_t num_lower, std::size_t k,
                     const BoundedDomain& domain) {
  const std::size_t n = t.n;
  if (k > n || s > n - k || num_lower > k) {
    throw std::out_of_range("WindowGiniMax: s=" + std::to_string(s) +
                            " k=" + std::to_string(k) +
                            " j=" + std::to_string(num_lower) +
                            " invalid for n=" + std::to_string(n));
  }
  const double nn = static_cast<double>(n);
  const double lows = static_cast<double>(num_lower);
  const double highs = static_cast<double>(k - num_lower);
  const double left_sum = t.p[s];
  const double right_sum = t.p[n] - t.p[s + k];
  const double lo = domain.lower();
  const double hi = domain.upper();

  // Ranks after replacement: lows first, then x_1..x_s shifted up by
  // num_lower, then x_{s+k+1}..x_n shifted down by the number of highs,
  // then the highs.
  const double num = lo * lows * (lows - nn) + t.c[s] + 2.0 * lows * left_sum +
                     (t.c[n] - t.c[s + k]) - 2.0 * highs * right_sum +
                     hi * highs * (nn - highs);
  const double total = left_sum + right_sum + lows * lo + highs * hi;
  if (!(total > 0.0)) return kNaN;
  return num / ((nn - 1.0) * total);
}

double WindowGiniMin(const PrefixTables& t, std::size_t num_low,
                     std::size_t rank, std::size_t k) {
  const std::size_t n = t.n;
  if (k > n || num_low > k) {
    throw std::out_of_range("WindowGiniMin: k=" + std::to_string(k) +
                            " i=" + std::to_string(num_low) +
                            " invalid for n=" + std::to_string(n));
  }
  const std::size_t first = num_low + 1;
  const std::size_t last = n - k + num_low;
  if (first > last || rank < first || rank > last) {
    throw std::out_of_range("WindowGiniMin: rank " + std::to_string(rank) +
                            " outside kept block [" + std::to_string(first) +
                            ", " + std::to_string(last) + "]");
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double i = static_cast<double>(num_low);
  const double j = static_cast<double>(rank);
  const double xj = t.x[rank];

  // Block below rank j keeps ranks t - i.
  const double below_sum = t.p[rank - 1] - t.p[num_low];
  const double below_ranked =
      (t.r[rank - 1] - t.r[num_low]) - i * below_sum;
  // k copies of x_j occupy ranks j - i .. j - i + k - 1.
  const double copies = kk * xj * (2.0 * (j - i - 1.0) + kk - nn);
  // Block from rank j upwards is shifted by k.
  const double above_sum = t.p[last] - t.p[rank - 1];
  const double above_ranked =
      (t.r[last] - t.r[rank - 1]) - (j - 1.0) * above_sum;

  const double num = 2.0 * below_ranked - (nn + 1.0) * below_sum + copies +
                     2.0 * above_ranked +
                     (2.0 * (j - i - 1.0 + kk) - nn - 1.0) * above_sum;
  const double total = (t.p[last] - t.p[num_low]) + kk * xj;
  if (!(total > 0.0)) return kNaN;
  return num / ((nn - 1.0) * total);
}

}  // namespace dpgini
