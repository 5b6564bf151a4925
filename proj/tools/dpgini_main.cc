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

// dpgini command-line front end. Writes one JSON document per run to stdout
// or --out. Exit codes: 0 success, 2 configuration error, 3 data error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpgini/errors.h"
#include "dpgini/gini_core.h"
#include "dpgini/harness.h"
#include "dpgini/mechanism.h"
#include "dpgini/posterior.h"
#include "dpgini/sensitivity.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct Options {
  std::string input;
  std::string column = "income";
  std::string filter_column;
  double filter_min = 0.0;
  std::string out;
  std::string csv_out;

  double epsilon = 1.0;
  double gamma = 2.0;
  double lower = 0.0;
  std::optional<double> upper;
  bool private_upper = false;
  double eps1 = dpgini::kDefaultBoundEpsilon;
  double eps2 = dpgini::kDefaultBoundEpsilon;
  double guess_floor = 1.0;
  double guess_growth = 2.0;
  std::string mode;
  std::string beta_variant = "nissim";
  std::optional<std::uint64_t> seed;
  std::size_t reps = 1;

  std::optional<double> synth_g;
  std::size_t synth_n = 100000;
  std::string iq = "minimal";

  std::size_t draws = 100000;
  std::size_t release_draws = 0;
  std::size_t sim_reps = 10000;
  std::vector<double> levels{0.95};
  std::string resampling = "multinomial";

  double sim_g = 0.5;
  std::vector<std::string> sim_iqs{"minimal"};
  std::vector<double> sim_eps{1.0};
};

std::optional<double> ParseIq(const std::string& text) {
  if (text == "minimal") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw dpgini::ConfigError("--iq expects a number or 'minimal', got '" +
                            text + "'");
}

// Without --seed the run draws a fresh seed from the OS so that repeated
// runs do not reuse noise.
std::uint64_t SeedOr(const Options& o) {
  if (o.seed) return *o.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::optional<dpgini::RowFilter> Filter(const Options& o) {
  if (o.filter_column.empty()) return std::nullopt;
  return dpgini::RowFilter{o.filter_column, o.filter_min};
}

dpgini::SortedDataset LoadBounded(const Options& o) {
  if (o.input.empty()) throw dpgini::ConfigError("--input is required");
  if (!o.upper) throw dpgini::ConfigError("--upper is required");
  const auto table = dpgini::LoadIncomes(o.input, o.column, Filter(o));
  std::cerr << "read " << table.rows_read << " rows, dropped "
            << table.rows_dropped << " by filter\n";
  return dpgini::MakeDataset(table.values,
                             dpgini::BoundedDomain(o.lower, *o.upper));
}

void Emit(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw dpgini::ConfigError("cannot write " + path);
  out << text;
}

void AddData(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "CSV file with a header row");
  cmd->add_option("--column", o.column, "income column name");
  cmd->add_option("--filter-column", o.filter_column,
                  "drop rows whose value in this column is below --filter-min");
  cmd->add_option("--filter-min", o.filter_min, "threshold for --filter-column");
}

void AddBudget(CLI::App* cmd, Options& o) {
  cmd->add_option("--epsilon", o.epsilon, "privacy budget of the release");
  cmd->add_option("--gamma", o.gamma, "noise tail exponent (> 1)");
  cmd->add_option("--mode", o.mode, "tight or relaxed (default depends on n)");
  cmd->add_option("--beta-variant", o.beta_variant, "nissim or conservative");
}

void AddBounds(CLI::App* cmd, Options& o, bool allow_private) {
  cmd->add_option("--lower", o.lower, "lower bound L >= 0");
  auto* up = cmd->add_option("--upper", o.upper, "public upper bound U");
  if (allow_private) {
    auto* priv = cmd->add_flag("--private-upper", o.private_upper,
                               "estimate U privately (costs eps1 + eps2)");
    up->excludes(priv);
    cmd->add_option("--eps1", o.eps1, "budget for the noisy count");
    cmd->add_option("--eps2", o.eps2, "budget for the threshold queries");
    cmd->add_option("--guess-floor", o.guess_floor, "first guess for U");
    cmd->add_option("--guess-growth", o.guess_growth, "guess ratio (> 1)");
  }
}

dpgini::SensitivityMode ModeOr(const Options& o, std::size_t n) {
  return o.mode.empty() ? dpgini::DefaultMode(n)
                        : dpgini::ParseSensitivityMode(o.mode);
}

int RunGini(const Options& o) {
  const auto dataset = LoadBounded(o);
  Emit({{"gini", dpgini::Gini(dataset)},
        {"gini_pairwise", dpgini::GiniPairwise(dataset.values())},
        {"n", dataset.size()},
        {"mean", dataset.mean()},
        {"normalized_range", dpgini::NormalizedRange::Of(dataset).value()},
        {"note", "non-private audit value; do not publish"}},
       o.out);
  return 0;
}

int RunSensitivity(const Options& o) {
  const auto dataset = LoadBounded(o);
  const dpgini::PrivacyParams params(
      o.epsilon, o.gamma, dpgini::ParseBetaVariant(o.beta_variant));
  const auto profile =
      dpgini::SmoothSensitivity(dataset, params, ModeOr(o, dataset.size()));
  json doc = dpgini::ToJson(profile);
  doc["alpha"] = params.alpha();
  doc["note"] = "smooth sensitivity depends on the confidential data";
  Emit(doc, o.out);
  return 0;
}

int RunReleaseCmd(const Options& o) {
  dpgini::RunConfig config;
  if (o.synth_g) {
    config.synthetic = dpgini::SyntheticSpec{*o.synth_g, o.synth_n, ParseIq(o.iq)};
  } else if (!o.input.empty()) {
    config.input_path = o.input;
  }
  config.column = o.column;
  config.filter = Filter(o);
  config.epsilon = o.epsilon;
  config.gamma = o.gamma;
  config.lower = o.lower;
  config.upper = o.upper;
  config.private_upper = o.private_upper;
  config.eps1 = o.eps1;
  config.eps2 = o.eps2;
  config.schedule.floor = o.guess_floor;
  config.schedule.growth = o.guess_growth;
  if (!o.mode.empty()) config.mode = dpgini::ParseSensitivityMode(o.mode);
  config.beta_variant = dpgini::ParseBetaVariant(o.beta_variant);
  config.seed = SeedOr(o);
  config.reps = o.reps;
  config.posterior_draws = o.release_draws;
  config.credible_levels = o.levels;
  Emit(dpgini::RunRelease(config), o.out);
  return 0;
}

int RunPosterior(const Options& o) {
  if (o.input.empty()) {
    throw dpgini::ConfigError("--input must name a release JSON file");
  }
  std::ifstream in(o.input);
  if (!in) throw dpgini::DataError("cannot open " + o.input);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw dpgini::DataError(std::string("invalid release JSON: ") + e.what());
  }
  const dpgini::PrivateRelease release = dpgini::ReleaseFromJson(doc);
  dpgini::PosteriorOptions options;
  options.count = o.draws;
  options.seed = SeedOr(o);
  if (o.resampling == "systematic") {
    options.resampling = dpgini::Resampling::kSystematic;
  } else if (o.resampling != "multinomial") {
    throw dpgini::ConfigError("--resampling must be multinomial or systematic");
  }
  for (double level : o.levels) {
    if (!(level > 0.0 && level < 1.0)) {
      throw dpgini::ConfigError("--level must lie in (0, 1)");
    }
  }
  const auto sample = dpgini::PosteriorSamples(release, options);
  json out = dpgini::PosteriorSummary(sample, o.levels);
  out["g_tilde"] = release.g_tilde;
  Emit(out, o.out);
  return 0;
}

int RunPrivateBound(const Options& o) {
  if (o.input.empty()) throw dpgini::ConfigError("--input is required");
  if (!(o.eps1 > 0.0) || !(o.eps2 > 0.0)) {
    throw dpgini::ConfigError("eps1 and eps2 must be positive");
  }
  if (!(o.guess_floor > 0.0) || !(o.guess_growth > 1.0)) {
    throw dpgini::ConfigError("guess schedule needs floor > 0 and growth > 1");
  }
  const auto table = dpgini::LoadIncomes(o.input, o.column, Filter(o));
  dpgini::GuessSchedule schedule;
  schedule.floor = o.guess_floor;
  schedule.growth = o.guess_growth;
  const std::uint64_t seed = SeedOr(o);
  dpgini::Rng rng(seed);
  json doc = dpgini::ToJson(
      dpgini::PrivateUpperBound(table.values, o.eps1, o.eps2, schedule, rng));
  doc["seed"] = seed;
  doc["total_epsilon"] = o.eps1 + o.eps2;
  Emit(doc, o.out);
  return 0;
}

int RunSimulate(const Options& o) {
  dpgini::SimulationConfig config;
  config.target_g = o.sim_g;
  config.n = o.synth_n;
  config.iqs.clear();
  for (const auto& text : o.sim_iqs) config.iqs.push_back(ParseIq(text));
  config.epsilons = o.sim_eps;
  for (double eps : config.epsilons) {
    if (!(eps > 0.0)) throw dpgini::ConfigError("epsilon must be positive");
  }
  config.gamma = o.gamma;
  config.mode = o.mode.empty() ? dpgini::SensitivityMode::kRelaxed
                               : dpgini::ParseSensitivityMode(o.mode);
  config.beta_variant = dpgini::ParseBetaVariant(o.beta_variant);
  config.reps = o.sim_reps;
  config.seed = SeedOr(o);
  const auto cells = dpgini::SimulateRmseVsIq(config);
  Emit(dpgini::ToJson(config, cells), o.out);
  if (!o.csv_out.empty()) {
    std::ofstream csv(o.csv_out);
    if (!csv) throw dpgini::ConfigError("cannot write " + o.csv_out);
    dpgini::WriteReplicationCsv(csv, cells);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private Gini index releases"};
  app.require_subcommand(1);
  Options o;

  auto* gini = app.add_subcommand("gini", "non-private Gini, for auditing");
  AddData(gini, o);
  AddBounds(gini, o, false);
  gini->add_option("--out", o.out, "output JSON path");

  auto* sens = app.add_subcommand("sensitivity",
                                  "smooth sensitivity profile (non-private)");
  AddData(sens, o);
  AddBounds(sens, o, false);
  AddBudget(sens, o);
  sens->add_option("--out", o.out, "output JSON path");

  auto* release = app.add_subcommand("release", "private Gini release");
  AddData(release, o);
  AddBounds(release, o, true);
  AddBudget(release, o);
  release->add_option("--seed", o.seed, "root seed");
  release->add_option("--reps", o.reps, "number of independent releases");
  release->add_option("--synthetic-g", o.synth_g,
                      "use a two-point synthetic dataset with this Gini");
  release->add_option("--n", o.synth_n, "synthetic dataset size");
  release->add_option("--iq", o.iq, "synthetic normalized range or 'minimal'");
  release->add_option("--posterior-draws", o.release_draws,
                      "attach a posterior summary with this many draws");
  release->add_option("--level", o.levels, "credible level(s)");
  release->add_option("--out", o.out, "output JSON path");

  auto* post = app.add_subcommand("posterior",
                                  "posterior summary from a release JSON");
  post->add_option("--input", o.input, "release JSON file")->required();
  post->add_option("--draws", o.draws, "number of posterior draws");
  post->add_option("--seed", o.seed, "resampling seed");
  post->add_option("--level", o.levels, "credible level(s)");
  post->add_option("--resampling", o.resampling, "multinomial or systematic");
  post->add_option("--out", o.out, "output JSON path");

  auto* bound = app.add_subcommand("private-bound",
                                   "private estimate of an upper bound");
  AddData(bound, o);
  bound->add_option("--eps1", o.eps1, "budget for the noisy count");
  bound->add_option("--eps2", o.eps2, "budget for the threshold queries");
  bound->add_option("--guess-floor", o.guess_floor, "first guess");
  bound->add_option("--guess-growth", o.guess_growth, "guess ratio (> 1)");
  bound->add_option("--seed", o.seed, "seed");
  bound->add_option("--out", o.out, "output JSON path");

  auto* sim = app.add_subcommand("simulate",
                                 "error of repeated releases on synthetic data");
  sim->add_option("--g", o.sim_g, "target Gini");
  sim->add_option("--n", o.synth_n, "dataset size");
  sim->add_option("--iq", o.sim_iqs, "normalized range(s) or 'minimal'");
  sim->add_option("--epsilon", o.sim_eps, "privacy budget(s)");
  sim->add_option("--gamma", o.gamma, "noise tail exponent (> 1)");
  sim->add_option("--mode", o.mode, "tight or relaxed (default relaxed)");
  sim->add_option("--beta-variant", o.beta_variant, "nissim or conservative");
  sim->add_option("--reps", o.sim_reps, "replications per cell");
  sim->add_option("--seed", o.seed, "root seed");
  sim->add_option("--out", o.out, "output JSON path");
  sim->add_option("--csv", o.csv_out, "per-replication CSV path");

  try {
    app.parse(argc, argv);
    if (gini->parsed()) return RunGini(o);
    if (sens->parsed()) return RunSensitivity(o);
    if (release->parsed()) return RunReleaseCmd(o);
    if (post->parsed()) return RunPosterior(o);
    if (bound->parsed()) return RunPrivateBound(o);
    if (sim->parsed()) return RunSimulate(o);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const dpgini::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const dpgini::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
