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

#ifndef DPGINI_MECHANISM_H_
#define DPGINI_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dpgini/gini_core.h"
#include "dpgini/sensitivity.h"

namespace dpgini {

using Rng = std::mt19937_64;

// Uniform draw in the open interval (0, 1) with 53 random bits. Defined here
// rather than through std::uniform_real_distribution so that a seed yields
// the same stream on every standard library.
double UniformOpen01(Rng& rng);

// Seed for replication `index` under `root_seed` (SplitMix64 finalizer).
std::uint64_t ReplicationSeed(std::uint64_t root_seed, std::uint64_t index);

// Generalized Cauchy density c_gamma / (1 + |psi|^gamma),
// c_gamma = gamma sin(pi / gamma) / (2 pi). gamma = 2 is the standard Cauchy.
double NoiseLogDensity(double gamma, double psi);
double NoiseCdf(double gamma, double psi);
double NoiseQuantile(double gamma, double u);

struct NoiseSample {
  double psi = 0.0;
  double gamma = 2.0;
};

// gamma == 2: exact inverse CDF. gamma > 2: rejection from a Cauchy envelope.
// 1 < gamma < 2: inverse CDF through the incomplete beta function.
// Throws ConfigError for gamma <= 1.
NoiseSample SampleNoise(double gamma, Rng& rng);

double LaplaceQuantile(double scale, double u);
// Laplace(0, scale). Throws ConfigError for scale <= 0.
double SampleLaplace(double scale, Rng& rng);

struct BoundGuess {
  double guess = 0.0;
  double noisy_count = 0.0;
};

// Private estimate of the data maximum and the inflated upper bound.
struct PrivateBoundsEstimate {
  double n_tilde = 0.0;
  double x_tilde = 0.0;
  double upper = 0.0;  // kUpperBoundInflation * x_tilde
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::vector<BoundGuess> guesses;

  double epsilon_spent() const { return eps1 + eps2; }
};

inline constexpr double kUpperBoundInflation = 2.5;
inline constexpr double kDefaultBoundEpsilon = 0.075;

// Increasing guesses floor, floor * growth, floor * growth^2, ...
struct GuessSchedule {
  double floor = 1.0;
  double growth = 2.0;
  std::size_t max_steps = 256;
};

// Noisy-count threshold search for the maximum. Draws n~ = n + Lap(1/eps1),
// then walks the schedule and stops at the first guess whose noisy count of
// values <= guess (count + Lap(1/eps2)) reaches n~. Values are touched only
// through those counts. Throws DataError if the schedule runs out.
PrivateBoundsEstimate PrivateUpperBound(std::span<const double> values,
                                        double eps1, double eps2,
                                        const GuessSchedule& schedule,
                                        Rng& rng);

// A released Gini value and everything needed to reason about its noise.
struct PrivateRelease {
  double g_tilde = 0.0;
  double smooth_sensitivity = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 2.0;
  double epsilon = 0.0;
  BetaVariant beta_variant = BetaVariant::kNissim;
  SensitivityMode mode = SensitivityMode::kTight;
  std::uint64_t seed = 0;
  std::optional<PrivateBoundsEstimate> bound_estimate;

  // S / alpha, the multiplier applied to the noise draw.
  double noise_scale() const { return smooth_sensitivity / alpha; }
  // Release budget plus any budget spent estimating the upper bound.
  double total_epsilon() const {
    return epsilon + (bound_estimate ? bound_estimate->epsilon_spent() : 0.0);
  }
};

// g~ = g + (S / alpha) psi with psi drawn from Rng(seed). Never clipped.
PrivateRelease ReleaseGini(const SortedDataset& dataset,
                           const PrivacyParams& params, SensitivityMode mode,
                           std::uint64_t seed);

// Same release when g and the profile are already known (simulations reuse
// one profile across replications).
PrivateRelease ReleaseWithProfile(double g, const SensitivityProfile& profile,
                                  const PrivacyParams& params,
                                  std::uint64_t seed);

// Deterministic release for a given noise draw.
PrivateRelease ReleaseWithNoise(double g, const SensitivityProfile& profile,
                                const PrivacyParams& params, double psi);

}  // namespace dpgini

#endif  // DPGINI_MECHANISM_H_
