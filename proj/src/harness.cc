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

#include "dpgini/harness.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "dpgini/errors.h"

namespace dpgini {
namespace {

using nlohmann::json;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

// Comma split without quoted-comma support; income extracts do not need it.
std::vector<std::string_view> SplitCsvLine(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      return cells;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::size_t ColumnIndex(const std::vector<std::string_view>& header,
                        const std::string& name, const std::string& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw DataError("column '" + name + "' not found in " + path);
  }
  return static_cast<std::size_t>(it - header.begin());
}

double ParseCell(std::string_view cell, std::size_t line_no,
                 const std::string& column) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw DataError("line " + std::to_string(line_no) + ": column '" + column +
                    "' holds non-numeric value '" + std::string(cell) + "'");
  }
  return v;
}

double MeanOfSquares(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s / static_cast<double>(v.size());
}

json ErrorSummary(const std::vector<double>& g_tilde, double g) {
  std::vector<double> abs_err;
  abs_err.reserve(g_tilde.size());
  for (double v : g_tilde) abs_err.push_back(std::abs(v - g));
  json j;
  j["g"] = g;
  j["reps"] = g_tilde.size();
  j["median_abs_error"] = EmpiricalQuantile(abs_err, 0.5);
  j["p90_abs_error"] = EmpiricalQuantile(abs_err, 0.9);
  j["p99_abs_error"] = EmpiricalQuantile(abs_err, 0.99);
  j["empirical_rmse"] = std::sqrt(MeanOfSquares(abs_err));
  j["note"] =
      "empirical RMSE over the replications; the noise has no finite "
      "variance for gamma <= 3 and no finite mean for gamma <= 2, so no "
      "population moments are reported";
  return j;
}

}  // namespace

IncomeTable LoadIncomes(const std::string& path, const std::string& column,
                        const std::optional<RowFilter>& filter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError("input file is empty: " + path);
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const std::string header_line = line;
  const auto header = SplitCsvLine(header_line);
  const std::size_t value_col = ColumnIndex(header, column, path);
  std::optional<std::size_t> filter_col;
  if (filter) filter_col = ColumnIndex(header, filter->column, path);

  IncomeTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw DataError("line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(header.size()));
    }
    ++table.rows_read;
    if (filter_col) {
      const double key = ParseCell(cells[*filter_col], line_no, filter->column);
      if (key < filter->min_value) {
        ++table.rows_dropped;
        continue;
      }
    }
    table.values.push_back(ParseCell(cells[value_col], line_no, column));
  }
  if (table.values.empty()) {
    throw DataError("no usable rows in " + path);
  }
  return table;
}

double MinIqForGini(double g) {
  if (!(g >= 0.0 && g < 1.0)) {
    throw ConfigError("target Gini must lie in [0, 1)");
  }
  return g <= 0.5 ? 4.0 * g : 1.0 / (1.0 - g);
}

SortedDataset SynthTwoPointDataset(const SyntheticSpec& spec) {
  const double g = spec.target_g;
  MinIqForGini(g);  // range check
  const std::size_t n = spec.n;
  if (n < 2) throw ConfigError("synthetic dataset needs n >= 2");
  if (spec.iq && !(*spec.iq > 0.0 && std::isfinite(*spec.iq))) {
    throw ConfigError("normalized range must be positive and finite");
  }
  const double nn = static_cast<double>(n);
  // Tolerates rounding in a user-supplied IQ equal to the minimal value.
  constexpr double kSlack = 1e-12;

  if (g == 0.0) {
    // The infimum 0 is not attained by any bounded domain, so the default
    // range is 1.
    const double width = spec.iq.value_or(1.0);
    return MakeDataset(std::vector<double>(n, 1.0),
                       BoundedDomain(1.0, 1.0 + width));
  }

  if (g <= 0.5) {
    const std::size_t low_count = (n + 1) / 2;
    const std::size_t high_count = n - low_count;
    const double z = static_cast<double>(low_count);
    const double h = static_cast<double>(high_count);
    const double spread = g * nn * nn / (z * h);
    const double low = std::max(0.0, 1.0 - h * spread / nn);
    const double high = low + spread;
    const double width = spec.iq.value_or(spread);
    if (width < spread * (1.0 - kSlack)) {
      throw ConfigError("normalized range " + std::to_string(width) +
                        " is below the minimum " + std::to_string(spread) +
                        " for this target Gini and n");
    }
    std::vector<double> values(n, low);
    std::fill(values.begin() + static_cast<std::ptrdiff_t>(low_count),
              values.end(), high);
    return MakeDataset(std::move(values),
                       BoundedDomain(low, low + std::max(width, spread)));
  }

  const auto zeros = static_cast<std::size_t>(std::llround(g * nn));
  if (zeros >= n) {
    throw ConfigError("n = " + std::to_string(n) +
                      " is too small to realize target Gini " +
                      std::to_string(g) + " with a nonzero value");
  }
  const double high = nn / static_cast<double>(n - zeros);
  const double upper = spec.iq.value_or(high);
  if (upper < high * (1.0 - kSlack)) {
    throw ConfigError("normalized range " + std::to_string(upper) +
                      " is below the minimum " + std::to_string(high) +
                      " for this target Gini and n");
  }
  std::vector<double> values(n, 0.0);
  std::fill(values.begin() + static_cast<std::ptrdiff_t>(zeros), values.end(),
            high);
  return MakeDataset(std::move(values),
                     BoundedDomain(0.0, std::max(upper, high)));
}

void RunConfig::Validate() const {
  if (input_path.has_value() == synthetic.has_value()) {
    throw ConfigError("give exactly one of an input file or a synthetic spec");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive");
  }
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be greater than 1");
  }
  if (reps == 0) throw ConfigError("reps must be at least 1");
  if (synthetic) {
    if (upper || private_upper) {
      throw ConfigError(
          "synthetic runs take their bounds from the synthetic spec");
    }
  } else if (upper.has_value() == private_upper) {
    throw ConfigError("give exactly one of --upper or --private-upper");
  }
  if (private_upper) {
    if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
      throw ConfigError("eps1 and eps2 must be positive");
    }
    if (!(schedule.floor > 0.0) || !(schedule.growth > 1.0)) {
      throw ConfigError("guess schedule needs floor > 0 and growth > 1");
    }
  }
  if (!(lower >= 0.0)) throw ConfigError("lower bound must be non-negative");
  for (double level : credible_levels) {
    if (!(level > 0.0 && level < 1.0)) {
      throw ConfigError("credible levels must lie in (0, 1)");
    }
  }
}

json ToJson(const PrivateBoundsEstimate& e) {
  json guesses = json::array();
  for (const auto& g : e.guesses) {
    guesses.push_back({{"guess", g.guess}, {"noisy_count", g.noisy_count}});
  }
  return {{"n_tilde", e.n_tilde}, {"x_tilde", e.x_tilde},
          {"upper", e.upper},     {"eps1", e.eps1},
          {"eps2", e.eps2},       {"guesses", std::move(guesses)}};
}

json ToJson(const PrivateRelease& r) {
  json j = {{"g_tilde", r.g_tilde},
            {"smooth_sensitivity", r.smooth_sensitivity},
            {"alpha", r.alpha},
            {"beta", r.beta},
            {"gamma", r.gamma},
            {"epsilon", r.epsilon},
            {"beta_variant", ToString(r.beta_variant)},
            {"mode", ToString(r.mode)},
            {"seed", r.seed},
            {"noise_scale", r.noise_scale()},
            {"total_epsilon", r.total_epsilon()}};
  if (r.bound_estimate) j["bound_estimate"] = ToJson(*r.bound_estimate);
  return j;
}

json ToJson(const SensitivityProfile& p) {
  json per_k = json::array();
  for (const auto& b : p.per_k) {
    per_k.push_back({{"k", b.k}, {"bound", b.bound}});
  }
  return {{"mode", ToString(p.mode)},
          {"beta", p.beta},
          {"k_max", p.k_max},
          {"smooth_sensitivity", p.smooth},
          {"per_k", std::move(per_k)}};
}

PrivateRelease ReleaseFromJson(const json& j) {
  // A run document with a single release carries the fields at top level.
  const json* src = &j;
  if (!j.contains("g_tilde") && j.contains("releases") &&
      j["releases"].is_array() && j["releases"].size() == 1) {
    src = &j["releases"][0];
  }
  const json& r = *src;
  auto number = [&r](const char* key) {
    if (!r.contains(key) || !r[key].is_number()) {
      throw ConfigError(std::string("release JSON lacks numeric field '") +
                        key + "'");
    }
    return r[key].get<double>();
  };
  PrivateRelease out;
  out.g_tilde = number("g_tilde");
  out.smooth_sensitivity = number("smooth_sensitivity");
  out.alpha = number("alpha");
  out.gamma = number("gamma");
  if (r.contains("beta")) out.beta = number("beta");
  if (r.contains("epsilon")) out.epsilon = number("epsilon");
  if (r.contains("seed")) out.seed = r["seed"].get<std::uint64_t>();
  if (r.contains("beta_variant")) {
    out.beta_variant = ParseBetaVariant(r["beta_variant"].get<std::string>());
  }
  if (r.contains("mode")) {
    out.mode = ParseSensitivityMode(r["mode"].get<std::string>());
  }
  if (!(out.smooth_sensitivity > 0.0) || !(out.alpha > 0.0) ||
      !(out.gamma > 1.0)) {
    throw ConfigError("release JSON needs smooth_sensitivity > 0, alpha > 0 "
                      "and gamma > 1");
  }
  return out;
}

json PosteriorSummary(const PosteriorSample& sample,
                      const std::vector<double>& levels) {
  double sum = 0.0;
  for (double d : sample.draws) sum += d;
  json intervals = json::array();
  for (double level : levels) {
    const auto [lo, hi] = CredibleInterval(sample, level);
    intervals.push_back({{"level", level}, {"lower", lo}, {"upper", hi}});
  }
  return {{"mean", sum / static_cast<double>(sample.draws.size())},
          {"median", EmpiricalQuantile(sample.draws, 0.5)},
          {"intervals", std::move(intervals)},
          {"draws", sample.draws.size()},
          {"seed", sample.seed}};
}

json RunRelease(const RunConfig& config) {
  config.Validate();
  const PrivacyParams params(config.epsilon, config.gamma,
                             config.beta_variant);

  std::vector<double> raw;
  std::optional<SortedDataset> fixed;
  if (config.synthetic) {
    fixed = SynthTwoPointDataset(*config.synthetic);
  } else {
    raw = LoadIncomes(*config.input_path, config.column, config.filter).values;
    if (config.upper) {
      fixed = MakeDataset(raw, BoundedDomain(config.lower, *config.upper));
    }
  }

  std::optional<SensitivityProfile> fixed_profile;
  std::optional<double> fixed_g;
  if (fixed) {
    const SensitivityMode mode = config.mode.value_or(DefaultMode(fixed->size()));
    fixed_profile = SmoothSensitivity(*fixed, params, mode);
    fixed_g = Gini(*fixed);
  }

  json releases = json::array();
  std::vector<double> g_tilde;
  for (std::size_t r = 0; r < config.reps; ++r) {
    const std::uint64_t rep_seed = ReplicationSeed(config.seed, r);
    PrivateRelease release;
    if (fixed) {
      release = ReleaseWithProfile(*fixed_g, *fixed_profile, params, rep_seed);
    } else {
      Rng bound_rng(ReplicationSeed(rep_seed, 1));
      PrivateBoundsEstimate estimate = PrivateUpperBound(
          raw, config.eps1, config.eps2, config.schedule, bound_rng);
      if (!(estimate.upper > config.lower)) {
        throw DataError("estimated upper bound does not exceed --lower");
      }
      const BoundedDomain domain(config.lower, estimate.upper);
      std::vector<double> clipped(raw);
      for (double& v : clipped) v = std::clamp(v, domain.lower(), domain.upper());
      const SortedDataset dataset = MakeDataset(std::move(clipped), domain);
      const SensitivityMode mode =
          config.mode.value_or(DefaultMode(dataset.size()));
      const SensitivityProfile profile =
          SmoothSensitivity(dataset, params, mode);
      release = ReleaseWithProfile(Gini(dataset), profile, params, rep_seed);
      release.bound_estimate = std::move(estimate);
    }
    json entry = ToJson(release);
    entry["replication"] = r;
    if (config.posterior_draws > 0) {
      PosteriorOptions options;
      options.count = config.posterior_draws;
      options.seed = ReplicationSeed(rep_seed, 2);
      entry["posterior"] = PosteriorSummary(PosteriorSamples(release, options),
                                            config.credible_levels);
    }
    g_tilde.push_back(release.g_tilde);
    releases.push_back(std::move(entry));
  }

  json doc;
  if (config.reps == 1) doc = releases[0];
  doc["root_seed"] = config.seed;
  doc["reps"] = config.reps;
  doc["total_epsilon"] = releases[0]["total_epsilon"];
  doc["releases"] = std::move(releases);
  if (config.synthetic) doc["error_summary"] = ErrorSummary(g_tilde, *fixed_g);
  return doc;
}

std::vector<SimulationCell> SimulateRmseVsIq(const SimulationConfig& config) {
  if (config.reps == 0) throw ConfigError("reps must be at least 1");
  if (config.iqs.empty() || config.epsilons.empty()) {
    throw ConfigError("simulation grid is empty");
  }
  std::vector<SimulationCell> cells;
  for (const auto& iq : config.iqs) {
    const SortedDataset dataset =
        SynthTwoPointDataset({config.target_g, config.n, iq});
    const double g = Gini(dataset);
    const NormalizedRange range = NormalizedRange::Of(dataset);
    for (double eps : config.epsilons) {
      const PrivacyParams params(eps, config.gamma, config.beta_variant);
      const SensitivityProfile profile =
          config.mode == SensitivityMode::kRelaxed
              ? SmoothSensitivityRelaxed(range, dataset.size(),
                                         dataset.domain(), params)
              : SmoothSensitivity(dataset, params, config.mode);
      SimulationCell cell;
      cell.iq = range.value();
      cell.epsilon = eps;
      cell.g = g;
      cell.smooth_sensitivity = profile.smooth;
      cell.reps = config.reps;
      cell.g_tilde.reserve(config.reps);
      std::vector<double> abs_err;
      abs_err.reserve(config.reps);
      for (std::size_t r = 0; r < config.reps; ++r) {
        // Same replication seeds in every cell: common random numbers.
        const PrivateRelease release = ReleaseWithProfile(
            g, profile, params, ReplicationSeed(config.seed, r));
        cell.g_tilde.push_back(release.g_tilde);
        abs_err.push_back(std::abs(release.g_tilde - g));
      }
      cell.rmse = std::sqrt(MeanOfSquares(abs_err));
      cell.median_abs_error = EmpiricalQuantile(abs_err, 0.5);
      cell.p90_abs_error = EmpiricalQuantile(abs_err, 0.9);
      cell.p99_abs_error = EmpiricalQuantile(abs_err, 0.99);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

json ToJson(const SimulationConfig& config,
            const std::vector<SimulationCell>& cells) {
  json rows = json::array();
  for (const auto& c : cells) {
    rows.push_back({{"iq", c.iq},
                    {"epsilon", c.epsilon},
                    {"g", c.g},
                    {"smooth_sensitivity", c.smooth_sensitivity},
                    {"reps", c.reps},
                    {"rmse", c.rmse},
                    {"median_abs_error", c.median_abs_error},
                    {"p90_abs_error", c.p90_abs_error},
                    {"p99_abs_error", c.p99_abs_error}});
  }
  return {{"target_g", config.target_g},
          {"n", config.n},
          {"gamma", config.gamma},
          {"mode", ToString(config.mode)},
          {"beta_variant", ToString(config.beta_variant)},
          {"root_seed", config.seed},
          {"reps", config.reps},
          {"rmse_note",
           "empirical RMSE over the replications; with gamma <= 3 the "
           "population RMSE is infinite"},
          {"cells", std::move(rows)}};
}

void WriteReplicationCsv(std::ostream& out,
                         const std::vector<SimulationCell>& cells) {
  out << "iq,epsilon,rep,g_tilde,abs_error\n";
  out.precision(17);
  for (const auto& c : cells) {
    for (std::size_t r = 0; r < c.g_tilde.size(); ++r) {
      out << c.iq << ',' << c.epsilon << ',' << r << ',' << c.g_tilde[r] << ','
          << std::abs(c.g_tilde[r] - c.g) << '\n';
    }
  }
}

}  // namespace dpgini
