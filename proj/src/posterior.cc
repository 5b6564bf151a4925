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

#include "dpgini/posterior.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dpgini {

double NoiseLogLikelihood(double g, const PrivateRelease& release) {
  if (!(release.smooth_sensitivity > 0.0)) {
    throw ConfigError("release has non-positive smooth sensitivity");
  }
  if (!(release.alpha > 0.0)) throw ConfigError("release has non-positive alpha");
  const double scale = release.noise_scale();
  const double residual = (release.g_tilde - g) / scale;
  return NoiseLogDensity(release.gamma, residual) - std::log(scale);
}

PosteriorSample PosteriorSamples(const PrivateRelease& release,
                                 const PosteriorOptions& options) {
  if (options.count < 1) throw ConfigError("posterior draw count must be >= 1");
  Rng rng(options.seed);
  const std::size_t count = options.count;

  std::vector<double> proposals(count);
  std::vector<double> log_w(count);
  double max_log_w = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double g = UniformOpen01(rng);
    proposals[i] = g;
    double lw = NoiseLogLikelihood(g, release);
    if (options.prior) {
      const double p = options.prior(g);
      lw = p > 0.0 ? lw + std::log(p) : -std::numeric_limits<double>::infinity();
    }
    log_w[i] = lw;
    max_log_w = std::max(max_log_w, lw);
  }
  if (!std::isfinite(max_log_w)) {
    throw DataError("all importance weights are zero");
  }

  // Cumulative normalized weights.
  std::vector<double> cdf(count);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    total += std::exp(log_w[i] - max_log_w);
    cdf[i] = total;
  }
  if (!(total > 0.0)) throw DataError("all importance weights are zero");
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;

  PosteriorSample out;
  out.release = release;
  out.seed = options.seed;
  out.draws.resize(count);
  auto pick = [&](double u) {
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    return proposals[static_cast<std::size_t>(it - cdf.begin())];
  };
  if (options.resampling == Resampling::kSystematic) {
    const double offset = UniformOpen01(rng);
    for (std::size_t i = 0; i < count; ++i) {
      out.draws[i] = pick((static_cast<double>(i) + offset) /
                          static_cast<double>(count));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) out.draws[i] = pick(UniformOpen01(rng));
  }
  return out;
}

double EmpiricalQuantile(std::vector<double> values, double q) {
  if (values.empty()) throw ConfigError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("quantile level must be in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::pair<double, double> CredibleInterval(const PosteriorSample& sample,
                                           double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw ConfigError("credible level must be in (0, 1)");
  }
  const double tail = (1.0 - level) / 2.0;
  return {EmpiricalQuantile(sample.draws, tail),
          EmpiricalQuantile(sample.draws, 1.0 - tail)};
}

}  // namespace dpgini
