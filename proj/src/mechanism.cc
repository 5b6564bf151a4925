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

#include "dpgini/mechanism.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>

namespace dpgini {
namespace {

void CheckGamma(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("noise exponent gamma must be finite and exceed 1");
  }
}

// P(Psi <= -|psi|) = 1/2 I_w(1 - 1/gamma, 1/gamma), w = 1 / (1 + |psi|^gamma).
double LowerTail(double gamma, double abs_psi) {
  const double w = 1.0 / (1.0 + std::pow(abs_psi, gamma));
  return 0.5 * boost::math::ibeta(1.0 - 1.0 / gamma, 1.0 / gamma, w);
}

// Inverse of LowerTail for a tail mass p in (0, 1/2].
double TailQuantile(double gamma, double p) {
  const double w =
      boost::math::ibeta_inv(1.0 - 1.0 / gamma, 1.0 / gamma, 2.0 * p);
  return std::pow((1.0 - w) / w, 1.0 / gamma);
}

std::uint64_t SplitMix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double UniformOpen01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t ReplicationSeed(std::uint64_t root_seed, std::uint64_t index) {
  return SplitMix64(root_seed ^ SplitMix64(index));
}

double NoiseLogDensity(double gamma, double psi) {
  CheckGamma(gamma);
  const double log_c =
      std::log(gamma * std::sin(std::numbers::pi / gamma) /
               (2.0 * std::numbers::pi));
  return log_c - std::log1p(std::pow(std::abs(psi), gamma));
}

double NoiseCdf(double gamma, double psi) {
  CheckGamma(gamma);
  if (gamma == 2.0) return 0.5 + std::atan(psi) / std::numbers::pi;
  const double tail = LowerTail(gamma, std::abs(psi));
  return psi < 0.0 ? tail : 1.0 - tail;
}

double NoiseQuantile(double gamma, double u) {
  CheckGamma(gamma);
  if (!(u > 0.0 && u < 1.0)) throw ConfigError("quantile level must be in (0, 1)");
  if (gamma == 2.0) return std::tan(std::numbers::pi * (u - 0.5));
  if (u == 0.5) return 0.0;
  return u < 0.5 ? -TailQuantile(gamma, u) : TailQuantile(gamma, 1.0 - u);
}

NoiseSample SampleNoise(double gamma, Rng& rng) {
  CheckGamma(gamma);
  if (gamma == 2.0) {
    return {std::tan(std::numbers::pi * (UniformOpen01(rng) - 0.5)), gamma};
  }
  if (gamma > 2.0) {
    // (1 + psi^2) / (1 + |psi|^gamma) <= 2 everywhere.
    for (;;) {
      const double psi = std::tan(std::numbers::pi * (UniformOpen01(rng) - 0.5));
      const double ratio =
          (1.0 + psi * psi) / (1.0 + std::pow(std::abs(psi), gamma));
      if (UniformOpen01(rng) * 2.0 <= ratio) return {psi, gamma};
    }
  }
  for (;;) {
    const double psi = NoiseQuantile(gamma, UniformOpen01(rng));
    if (std::isfinite(psi)) return {psi, gamma};
  }
}

double LaplaceQuantile(double scale, double u) {
  if (!(scale > 0.0)) throw ConfigError("Laplace scale must be positive");
  if (!(u > 0.0 && u < 1.0)) throw ConfigError("quantile level must be in (0, 1)");
  if (u < 0.5) return scale * std::log(2.0 * u);
  return -scale * std::log(2.0 * (1.0 - u));
}

double SampleLaplace(double scale, Rng& rng) {
  return LaplaceQuantile(scale, UniformOpen01(rng));
}

PrivateBoundsEstimate PrivateUpperBound(std::span<const double> values,
                                        double eps1, double eps2,
                                        const GuessSchedule& schedule,
                                        Rng& rng) {
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw ConfigError("bound-estimation budgets eps1 and eps2 must be positive");
  }
  if (!(schedule.floor > 0.0) || !(schedule.growth > 1.0)) {
    throw ConfigError("guess schedule needs floor > 0 and growth > 1");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  PrivateBoundsEstimate out;
  out.eps1 = eps1;
  out.eps2 = eps2;
  out.n_tilde = static_cast<double>(sorted.size()) + SampleLaplace(1.0 / eps1, rng);

  double guess = schedule.floor;
  for (std::size_t step = 0; step < schedule.max_steps; ++step) {
    const auto count = static_cast<double>(
        std::upper_bound(sorted.begin(), sorted.end(), guess) - sorted.begin());
    const double noisy = count + SampleLaplace(1.0 / eps2, rng);
    out.guesses.push_back({guess, noisy});
    if (noisy >= out.n_tilde) {
      out.x_tilde = guess;
      out.upper = kUpperBoundInflation * guess;
      return out;
    }
    guess *= schedule.growth;
  }
  throw DataError("private upper bound: guess schedule exhausted after " +
                  std::to_string(schedule.max_steps) +
                  " steps; raise the floor or the step limit");
}

PrivateRelease ReleaseWithNoise(double g, const SensitivityProfile& profile,
                                const PrivacyParams& params, double psi) {
  PrivateRelease r;
  r.smooth_sensitivity = profile.smooth;
  r.alpha = params.alpha();
  r.beta = params.beta();
  r.gamma = params.gamma();
  r.epsilon = params.epsilon();
  r.beta_variant = params.beta_variant();
  r.mode = profile.mode;
  r.g_tilde = g + r.noise_scale() * psi;
  return r;
}

PrivateRelease ReleaseWithProfile(double g, const SensitivityProfile& profile,
                                  const PrivacyParams& params,
                                  std::uint64_t seed) {
  Rng rng(seed);
  const NoiseSample noise = SampleNoise(params.gamma(), rng);
  PrivateRelease r = ReleaseWithNoise(g, profile, params, noise.psi);
  r.seed = seed;
  return r;
}

PrivateRelease ReleaseGini(const SortedDataset& dataset,
                           const PrivacyParams& params, SensitivityMode mode,
                           std::uint64_t seed) {
  const SensitivityProfile profile = SmoothSensitivity(dataset, params, mode);
  return ReleaseWithProfile(Gini(dataset), profile, params, seed);
}

}  // namespace dpgini
