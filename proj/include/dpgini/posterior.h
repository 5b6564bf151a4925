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

#ifndef DPGINI_POSTERIOR_H_
#define DPGINI_POSTERIOR_H_

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dpgini/mechanism.h"

namespace dpgini {

// log p(g~ | g) for the generalized-Cauchy release, normalized:
//   log c_gamma + log(alpha / S) - log(1 + |alpha (g~ - g) / S|^gamma).
// Throws ConfigError if the release has S <= 0 or alpha <= 0.
double NoiseLogLikelihood(double g, const PrivateRelease& release);

// Prior density on [0, 1], up to a constant. An empty function means
// Uniform(0, 1).
using PriorDensity = std::function<double(double)>;

enum class Resampling { kMultinomial, kSystematic };

struct PosteriorOptions {
  std::size_t count = 100000;
  std::uint64_t seed = 0;
  PriorDensity prior;
  Resampling resampling = Resampling::kMultinomial;
};

// Equally weighted draws from p(g | g~) on [0, 1].
struct PosteriorSample {
  std::vector<double> draws;
  PrivateRelease release;
  std::uint64_t seed = 0;
};

// Self-normalized importance resampling: `count` Uniform(0, 1) proposals,
// weights p(g~ | g) p(g) computed in log space, resampled with replacement.
// Throws DataError when every weight underflows to zero.
PosteriorSample PosteriorSamples(const PrivateRelease& release,
                                 const PosteriorOptions& options);

// Empirical quantile with linear interpolation between order statistics.
double EmpiricalQuantile(std::vector<double> values, double q);

// Central interval from the ((1 - level) / 2, (1 + level) / 2) quantiles.
std::pair<double, double> CredibleInterval(const PosteriorSample& sample,
                                           double level);

}  // namespace dpgini

#endif  // DPGINI_POSTERIOR_H_
