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

#ifndef DPGINI_HARNESS_H_
#define DPGINI_HARNESS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dpgini/gini_core.h"
#include "dpgini/mechanism.h"
#include "dpgini/posterior.h"
#include "dpgini/sensitivity.h"
#include "json.hpp"

namespace dpgini {

// Rows whose `column` value is below `min_value` are dropped.
struct RowFilter {
  std::string column;
  double min_value = 0.0;
};

struct IncomeTable {
  std::vector<double> values;
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
};

// Reads one numeric column of a CSV file with a header row. Any I/O or parse
// problem, and an empty result, is a DataError.
IncomeTable LoadIncomes(const std::string& path, const std::string& column,
                        const std::optional<RowFilter>& filter = std::nullopt);

// Smallest (U - L) / mean over non-negative datasets with Gini g:
// 4g for g <= 1/2, 1/(1 - g) above. Throws ConfigError unless 0 <= g < 1.
double MinIqForGini(double g);

// Two-point dataset with a prescribed mean-absolute-difference Gini.
// `iq` unset means the minimal normalized range for `target_g`.
struct SyntheticSpec {
  double target_g = 0.5;
  std::size_t n = 100000;
  std::optional<double> iq;
};

// Mean is normalized to 1. For g <= 1/2, ceil(n/2) values sit at a and the
// rest at b = a + d with the pairwise Gini exactly g; for g > 1/2,
// round(g n) zeros and the rest at n / (#nonzero). The domain is [L, L + IQ]
// with L = a (or 0 above 1/2); the minimal IQ is the two-point spread itself.
// Throws ConfigError if IQ is below what the construction needs.
SortedDataset SynthTwoPointDataset(const SyntheticSpec& spec);

struct RunConfig {
  std::optional<std::string> input_path;
  std::string column = "income";
  std::optional<RowFilter> filter;
  std::optional<SyntheticSpec> synthetic;

  double epsilon = 1.0;
  double gamma = 2.0;
  double lower = 0.0;
  std::optional<double> upper;
  bool private_upper = false;
  double eps1 = kDefaultBoundEpsilon;
  double eps2 = kDefaultBoundEpsilon;
  GuessSchedule schedule;

  std::optional<SensitivityMode> mode;
  BetaVariant beta_variant = BetaVariant::kNissim;
  std::uint64_t seed = 0;
  std::size_t reps = 1;

  std::size_t posterior_draws = 0;
  std::vector<double> credible_levels{0.95};

  // Validates the budget and bound options. Throws ConfigError.
  void Validate() const;
};

nlohmann::json ToJson(const PrivateBoundsEstimate& estimate);
nlohmann::json ToJson(const PrivateRelease& release);
nlohmann::json ToJson(const SensitivityProfile& profile);
// Reads the fields written by ToJson(PrivateRelease). Throws ConfigError.
PrivateRelease ReleaseFromJson(const nlohmann::json& j);

// Mean, median, interval per level, draw count and seed.
nlohmann::json PosteriorSummary(const PosteriorSample& sample,
                                const std::vector<double>& levels);

// Full release pipeline. Replication r uses ReplicationSeed(seed, r) for its
// noise and ReplicationSeed(that, 1) for the optional bound estimate. The
// confidential Gini is only reported (as error summaries) for synthetic
// inputs.
nlohmann::json RunRelease(const RunConfig& config);

struct SimulationConfig {
  double target_g = 0.5;
  std::size_t n = 100000;
  // Empty optional entries mean the minimal normalized range.
  std::vector<std::optional<double>> iqs{std::nullopt};
  std::vector<double> epsilons{1.0};
  double gamma = 2.0;
  SensitivityMode mode = SensitivityMode::kRelaxed;
  BetaVariant beta_variant = BetaVariant::kNissim;
  std::size_t reps = 10000;
  std::uint64_t seed = 0;
};

struct SimulationCell {
  double iq = 0.0;
  double epsilon = 0.0;
  double g = 0.0;
  double smooth_sensitivity = 0.0;
  std::size_t reps = 0;
  double rmse = 0.0;
  double median_abs_error = 0.0;
  double p90_abs_error = 0.0;
  double p99_abs_error = 0.0;
  std::vector<double> g_tilde;
};

// Error of repeated releases on a synthetic two-point dataset, one cell per
// (IQ, epsilon). Every cell reuses the same replication seeds, so cells differ
// only through the noise scale. RMSE here is the empirical value over the
// replications; for gamma <= 3 the population RMSE does not exist.
std::vector<SimulationCell> SimulateRmseVsIq(const SimulationConfig& config);

nlohmann::json ToJson(const SimulationConfig& config,
                      const std::vector<SimulationCell>& cells);

// iq,epsilon,rep,g_tilde,abs_error rows for plotting.
void WriteReplicationCsv(std::ostream& out,
                         const std::vector<SimulationCell>& cells);

}  // namespace dpgini

#endif  // DPGINI_HARNESS_H_
