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

#ifndef DPGINI_SENSITIVITY_H_
#define DPGINI_SENSITIVITY_H_

#include <cstddef>
#include <string>
#include <vector>

#include "dpgini/extremal_search.h"
#include "dpgini/gini_core.h"

namespace dpgini {

// Which smoothing rate to use. kNissim is epsilon / gamma, the rate that
// calibrates the generalized-Cauchy mechanism and the accuracy threshold.
// kConservative is epsilon / (2 (gamma + 1)).
enum class BetaVariant { kNissim, kConservative };

std::string ToString(BetaVariant variant);
BetaVariant ParseBetaVariant(const std::string& name);

// Pure-DP parameters for the generalized-Cauchy smooth-sensitivity release.
// alpha = epsilon / (4 gamma) scales the noise; beta is the smoothing rate.
class PrivacyParams {
 public:
  PrivacyParams(double epsilon, double gamma,
                BetaVariant variant = BetaVariant::kNissim);

  double epsilon() const { return epsilon_; }
  double gamma() const { return gamma_; }
  double alpha() const { return epsilon_ / (4.0 * gamma_); }
  double beta() const;
  BetaVariant beta_variant() const { return variant_; }

 private:
  double epsilon_;
  double gamma_;
  BetaVariant variant_;
};

enum class SensitivityMode { kTight, kRelaxed };

std::string ToString(SensitivityMode mode);
SensitivityMode ParseSensitivityMode(const std::string& name);

// Tight for n <= 10^4, relaxed above.
SensitivityMode DefaultMode(std::size_t n);

// (U - L) / mean. Drives the scale of every bound.
class NormalizedRange {
 public:
  explicit NormalizedRange(double iq);
  static NormalizedRange Of(const SortedDataset& dataset);
  double value() const { return iq_; }

 private:
  double iq_;
};

// Upper bound on the local sensitivity of any dataset within distance k,
// from the extremal summary at k. Falls back to 1 when
// n * min_mean - (U - L) <= 0 or the bound exceeds 1.
double LocalSensitivityBoundTight(const ExtremalSummary& summary,
                                  const BoundedDomain& domain, std::size_t n);

// Cheaper bound that needs only (U - L) / mean:
//   2 / (n (1/IQ - k/n) - 1)
// when 1 / (1/IQ - k/n) <= (U - L) / L and the value is below 1, else 1.
// L == 0 makes the ratio (U - L) / L infinite.
double LocalSensitivityBoundRelaxed(NormalizedRange iq, std::size_t n,
                                    std::size_t k,
                                    const BoundedDomain& domain);

struct DistanceBound {
  std::size_t k = 0;
  double bound = 0.0;
};

struct SensitivityProfile {
  SensitivityMode mode = SensitivityMode::kTight;
  double beta = 0.0;
  std::size_t k_max = 0;
  std::vector<DistanceBound> per_k;
  // max_k exp(-beta k) A^(k)
  double smooth = 0.0;
};

// Smooth sensitivity max_{0<=k<=k_max} exp(-beta k) A^(k) with
// k_max = min(n, ceil(-ln A^(0) / beta)); larger k cannot raise the max
// because A^(k) <= 1.
SensitivityProfile SmoothSensitivity(
    const SortedDataset& dataset, const PrivacyParams& params,
    SensitivityMode mode, MinSearch search = MinSearch::kLinearScan);

// Relaxed-mode smooth sensitivity from (IQ, n, domain) alone, for synthetic
// experiments that never materialize the dataset.
SensitivityProfile SmoothSensitivityRelaxed(NormalizedRange iq, std::size_t n,
                                            const BoundedDomain& domain,
                                            const PrivacyParams& params);

// Smallest n with n >= max(2 IQ (2/(eps eta) + 1),
//                          (2 IQ gamma / eps) ln(1 / (eps eta))).
// For such n the relaxed smooth sensitivity is at most eps * eta.
std::size_t AccuracyThreshold(NormalizedRange iq, double epsilon, double gamma,
                              double eta);

}  // namespace dpgini

#endif  // DPGINI_SENSITIVITY_H_
