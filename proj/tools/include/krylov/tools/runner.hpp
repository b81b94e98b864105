// Copyright 2026 The krylov-circuits Authors
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

#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "krylov/series.hpp"
#include "krylov/tools/config.hpp"

namespace krylov::tools {

/// Exit statuses of the krylov executable.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitResource = 3,
  kExitNumerical = 4,
};

struct NamedSeries {
  std::string name;
  AveragedSeries series;
};

struct RunResult {
  ExperimentConfig config;
  /// Main series (series.csv); for a scan, the run at the largest h.
  AveragedSeries series;
  /// Additional per-parameter series (scan points), written as series_<name>.csv.
  std::vector<NamedSeries> extra_series;
  /// Optional table written as table.csv (scan results).
  std::string table_csv;
  nlohmann::json summary;
  nlohmann::json manifest;
  /// Set when the run finished with a recoverable estimation failure; outputs
  /// are still written.
  std::string error;
};

/// Runs a validated config. Analytics configs produce only a summary whose
/// "value" member holds the result.
RunResult run_experiment(const ExperimentConfig& config);

/// Evaluates an analytics formula; a number for scalar formulas, an object
/// otherwise.
nlohmann::json evaluate_analytics(const ExperimentConfig& config);

/// `t,c_mean,c_stderr,n_samples` rows with shortest round-trip reals.
std::string series_csv(const AveragedSeries& series);

/// Writes series.csv, summary.json and manifest.json (plus extras) into `dir`.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// Maps an exception to an exit code.
int exit_code_for(const std::exception& e) noexcept;

/// One-line JSON error record for the diagnostic stream.
std::string error_line(const std::exception& e);

/// Canned desk-scale configs behind `reproduce fig1|fig2|fig3`, each with a
/// subdirectory label. Throws ConfigError for an unknown figure.
std::vector<std::pair<std::string, ExperimentConfig>> reproduction_plan(
    const std::string& figure, const ExperimentConfig& base);

}  // namespace krylov::tools
