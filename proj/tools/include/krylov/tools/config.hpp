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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "krylov/error.hpp"

namespace krylov::tools {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

enum class Experiment { Ruc, Monitored, Gaussian, Spins, MblScan, Analytics };

std::string_view to_string(Experiment e) noexcept;
/// Accepts both "mbl_scan" and "mbl-scan".
std::optional<Experiment> parse_experiment(std::string_view text) noexcept;

/// Everything needed to reproduce one run. Enumerated choices are kept as
/// their text names so that the config echoes exactly what was given;
/// validate() checks them.
struct ExperimentConfig {
  Experiment experiment = Experiment::Ruc;
  /// Qubits, fermionic pairs (gaussian) or draws (analytics). Experiment
  /// default when empty.
  std::optional<int> n;
  /// 4·2^N for circuit runs, 512 for gaussian when empty.
  std::optional<std::size_t> steps;
  std::size_t samples = 100;

  /// haar_u4, so4, o4, mbl, or global (per-step global Haar unitary).
  std::string ensemble;
  std::string boundary = "open";
  /// Measurement rate (monitored).
  double p = 0.0;
  std::string schedule = "per_half_layer";
  /// MBL coupling (spins).
  double h = 0.3;
  std::vector<double> h_grid;
  bool homogeneous = false;
  std::string mode = "single_particle";
  /// K-complexity of Z on qubit 0 instead of spread complexity (ruc, global).
  bool operator_complexity = false;

  std::optional<std::size_t> window;
  double rel_tol = 0.05;

  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string out = "krylov_out";
  std::string format = "csv";

  /// analytics: formula name and its integer/real arguments.
  std::string formula;
  std::optional<std::int64_t> d;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> t;
  double epsilon = 0.1;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Sets one field from its text form. Throws ConfigError for unknown keys or
/// unparsable values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines ('#' starts a comment) on top of `base`.
ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {});

/// Reads a key = value file, or the "config" member of a JSON run manifest.
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

/// Every field in key = value form; parse_config_text inverts it.
std::string to_config_text(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Experiment-dependent defaults resolved.
int resolved_n(const ExperimentConfig& config);
std::size_t resolved_steps(const ExperimentConfig& config);
std::string resolved_ensemble(const ExperimentConfig& config);
std::vector<double> resolved_h_grid(const ExperimentConfig& config);

/// Throws ConfigError for missing or inconsistent settings and ResourceLimit
/// when the run would exceed the memory caps.
void validate(const ExperimentConfig& config);

}  // namespace krylov::tools
