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

#include "dpgini/sensitivity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dpgini {
namespace {

// A^(k) outside (0, 1] (a failed guard or a non-finite value) collapses to 1.
double ClampBound(double a) {
  if (!std::isfinite(a) || a <= 0.0 || a > 1.0) return 1.0;
  return a;
}

std::size_t PrunedKMax(double ls0, double beta, std::size_t n) {
  if (ls0 >= 1.0) return 0;
  const double k = std::ceil(-std::log(ls0) / beta);
  if (!(k < static_cast<double>(n))) return n;
  return static_cast<std::size_t>(k);
}

template <typename BoundAtK>
SensitivityProfile Accumulate(SensitivityMode mode, double beta, std::size_t n,
                              BoundAtK&& bound_at) {
  SensitivityProfile profile;
  profile.mode = mode;
  profile.beta = beta;
  const double ls0 = bound_at(0);
  profile.k_max = PrunedKMax(ls0, beta, n);
  profile.per_k.reserve(profile.k_max + 1);
  profile.per_k.push_back({0, ls0});
  profile.smooth = ls0;
  for (std::size_t k = 1; k <= profile.k_max; ++k) {
    const double a = bound_at(k);
    profile.per_k.push_back({k, a});
    profile.smooth =
        std::max(profile.smooth, std::exp(-beta * static_cast<double>(k)) * a);
  }
  return profile;
}

}  // namespace

std::string ToString(BetaVariant variant) {
  return variant == BetaVariant::kNissim ? "nissim" : "conservative";
}

BetaVariant ParseBetaVariant(const std::string& name) {
  if (name == "nissim") return BetaVariant::kNissim;
  if (name == "conservative") return BetaVariant::kConservative;
  throw ConfigError("unknown beta variant '" + name +
                    "' (expected nissim or conservative)");
}

PrivacyParams::PrivacyParams(double epsilon, double gamma, BetaVariant variant)
    : epsilon_(epsilon), gamma_(gamma), variant_(variant) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive and finite");
  }
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be finite and greater than 1");
  }
}

double PrivacyParams::beta() const {
  if (variant_ == BetaVariant::kNissim) return epsilon_ / gamma_;
  return epsilon_ / (2.0 * (gamma_ + 1.0));
}

std::string ToString(SensitivityMode mode) {
  return mode == SensitivityMode::kTight ? "tight" : "relaxed";
}

SensitivityMode ParseSensitivityMode(const std::string& name) {
  if (name == "tight") return SensitivityMode::kTight;
  if (name == "relaxed") return SensitivityMode::kRelaxed;
  throw ConfigError("unknown mode '" + name + "' (expected tight or relaxed)");
}

SensitivityMode DefaultMode(std::size_t n) {
  return n <= 10000 ? SensitivityMode::kTight : SensitivityMode::kRelaxed;
}

NormalizedRange::NormalizedRange(double iq) : iq_(iq) {
  if (!(iq > 0.0) || !std::isfinite(iq)) {
    throw ConfigError("normalized range must be positive and finite");
  }
}

NormalizedRange NormalizedRange::Of(const SortedDataset& dataset) {
  return NormalizedRange(dataset.domain().width() / dataset.mean());
}

double LocalSensitivityBoundTight(const ExtremalSummary& s,
                                  const BoundedDomain& domain, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double width = domain.width();
  const double lower = domain.lower();
  const double upper = domain.upper();
  const double n_min_mean = nn * s.min_mean;
  const double guard = n_min_mean - width;
  if (!(guard > 0.0)) return 1.0;

  // Increasing one value.
  const double c1 = std::max(
      width * (1.0 - s.min_g) / (n_min_mean + width),
      2.0 * (nn * s.max_mean - nn * lower) / (n_min_mean * (nn - 1.0)));
  // Decreasing one value.
  const double c2 = std::max(
      width * (s.max_g + 1.0 - 2.0 / (nn - 1.0)) / guard,
      2.0 * nn * (upper - s.min_mean) / (guard * (nn - 1.0)));
  return ClampBound(std::max(c1, c2));
}

double LocalSensitivityBoundRelaxed(NormalizedRange iq, std::size_t n,
                                    std::size_t k,
                                    const BoundedDomain& domain) {
  const double nn = static_cast<double>(n);
  const double slack = 1.0 / iq.value() - static_cast<double>(k) / nn;
  if (!(slack > 0.0)) return 1.0;
  if (domain.lower() > 0.0) {
    const double ratio = domain.width() / domain.lower();
    if (!(1.0 / slack <= ratio)) return 1.0;
  }
  const double denom = nn * slack - 1.0;
  if (!(denom > 0.0)) return 1.0;
  const double a = 2.0 / denom;
  return a < 1.0 ? a : 1.0;
}

SensitivityProfile SmoothSensitivity(const SortedDataset& dataset,
                                     const PrivacyParams& params,
                                     SensitivityMode mode, MinSearch search) {
  const std::size_t n = dataset.size();
  const BoundedDomain& domain = dataset.domain();
  if (mode == SensitivityMode::kRelaxed) {
    return SmoothSensitivityRelaxed(NormalizedRange::Of(dataset), n, domain,
                                    params);
  }
  const PrefixTables tables = BuildPrefixTables(dataset);
  return Accumulate(mode, params.beta(), n, [&](std::size_t k) {
    const ExtremalSummary summary =
        ComputeExtremalSummary(tables, k, domain, search);
    return LocalSensitivityBoundTight(summary, domain, n);
  });
}

SensitivityProfile SmoothSensitivityRelaxed(NormalizedRange iq, std::size_t n,
                                            const BoundedDomain& domain,
                                            const PrivacyParams& params) {
  if (n < 2) throw ConfigError("smooth sensitivity needs n >= 2");
  return Accumulate(SensitivityMode::kRelaxed, params.beta(), n,
                    [&](std::size_t k) {
                      return LocalSensitivityBoundRelaxed(iq, n, k, domain);
                    });
}

std::size_t AccuracyThreshold(NormalizedRange iq, double epsilon, double gamma,
                              double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  const double r = iq.value();
  const double budget = epsilon * eta;
  const double by_size = 2.0 * r * (2.0 / budget + 1.0);
  const double by_decay = (2.0 * r * gamma / epsilon) * std::log(1.0 / budget);
  const double bound = std::max(by_size, by_decay);
  // Absorb rounding so that an exact integer bound is not pushed up by one.
  return static_cast<std::size_t>(std::ceil(bound * (1.0 - 1e-12)));
}

}  // namespace dpgini
