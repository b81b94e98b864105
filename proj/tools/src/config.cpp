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

#include "krylov/tools/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "krylov/complexity.hpp"
#include "krylov/ensembles.hpp"
#include "krylov/gaussian.hpp"
#include "krylov/statevector.hpp"

namespace krylov::tools {

namespace {

// Largest Krylov basis (bytes) a run may allocate.
constexpr double kMaxBasisBytes = 2.0 * 1024 * 1024 * 1024;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key));
}

template <class T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value);
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) bad_value(key, value);
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value);
}

// "a,b,c" or "lo:hi:step".
std::vector<double> parse_grid(std::string_view key, std::string_view value) {
  std::vector<double> out;
  if (value.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (start <= value.size()) {
      const auto colon = value.find(':', start);
      const auto len = colon == std::string_view::npos ? value.size() - start : colon - start;
      parts.push_back(parse_real(key, trim(value.substr(start, len))));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) bad_value(key, value);
    const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long k = 0; k <= count; ++k) {
      // Round away accumulated binary noise so 0.05:0.6:0.05 gives 0.3, not 0.30000000000000004.
      out.push_back(std::round((parts[0] + static_cast<double>(k) * parts[2]) * 1e12) / 1e12);
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto len = comma == std::string_view::npos ? value.size() - start : comma - start;
    const auto item = trim(value.substr(start, len));
    if (!item.empty()) out.push_back(parse_real(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) bad_value(key, value);
  return out;
}

bool is_state_experiment(Experiment e) {
  return e == Experiment::Ruc || e == Experiment::Monitored || e == Experiment::Spins ||
         e == Experiment::MblScan;
}

void check_basis_memory(double dim, double steps, double scalar_bytes) {
  const double bytes = dim * std::min(steps + 1.0, dim) * scalar_bytes;
  if (bytes > kMaxBasisBytes) {
    std::ostringstream msg;
    msg << "Krylov basis would need " << bytes / (1024.0 * 1024.0) << " MiB (cap "
        << kMaxBasisBytes / (1024.0 * 1024.0) << " MiB)";
    throw ResourceLimit(msg.str());
  }
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string format_real(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

std::string_view to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::Ruc: return "ruc";
    case Experiment::Monitored: return "monitored";
    case Experiment::Gaussian: return "gaussian";
    case Experiment::Spins: return "spins";
    case Experiment::MblScan: return "mbl_scan";
    case Experiment::Analytics: return "analytics";
  }
  return "ruc";
}

std::optional<Experiment> parse_experiment(std::string_view text) noexcept {
  if (text == "ruc") return Experiment::Ruc;
  if (text == "monitored") return Experiment::Monitored;
  if (text == "gaussian") return Experiment::Gaussian;
  if (text == "spins") return Experiment::Spins;
  if (text == "mbl_scan" || text == "mbl-scan") return Experiment::MblScan;
  if (text == "analytics") return Experiment::Analytics;
  return std::nullopt;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  const bool empty = value.empty() || value == "none" || value == "null";
  if (key == "experiment") {
    auto e = parse_experiment(value);
    if (!e) bad_value(key, value);
    c.experiment = *e;
  } else if (key == "n") {
    c.n = empty ? std::nullopt : std::optional<int>(parse_integer<int>(key, value));
  } else if (key == "steps" || key == "t_max") {
    c.steps = empty ? std::nullopt
                    : std::optional<std::size_t>(parse_integer<std::size_t>(key, value));
  } else if (key == "samples") {
    c.samples = parse_integer<std::size_t>(key, value);
  } else if (key == "ensemble") {
    c.ensemble = std::string(value);
  } else if (key == "boundary") {
    c.boundary = std::string(value);
  } else if (key == "p") {
    c.p = parse_real(key, value);
  } else if (key == "schedule") {
    c.schedule = std::string(value);
  } else if (key == "h") {
    c.h = parse_real(key, value);
  } else if (key == "h_grid") {
    c.h_grid = empty ? std::vector<double>{} : parse_grid(key, value);
  } else if (key == "homogeneous") {
    c.homogeneous = parse_bool(key, value);
  } else if (key == "mode") {
    c.mode = std::string(value);
  } else if (key == "operator_complexity") {
    c.operator_complexity = parse_bool(key, value);
  } else if (key == "window") {
    c.window = empty ? std::nullopt
                     : std::optional<std::size_t>(parse_integer<std::size_t>(key, value));
  } else if (key == "rel_tol") {
    c.rel_tol = parse_real(key, value);
  } else if (key == "seed" || key == "master_seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "workers") {
    c.workers = parse_integer<unsigned>(key, value);
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "format") {
    c.format = std::string(value);
  } else if (key == "formula") {
    c.formula = std::string(value);
  } else if (key == "d") {
    c.d = empty ? std::nullopt : std::optional<std::int64_t>(parse_integer<std::int64_t>(key, value));
  } else if (key == "m") {
    c.m = empty ? std::nullopt : std::optional<std::int64_t>(parse_integer<std::int64_t>(key, value));
  } else if (key == "t") {
    c.t = empty ? std::nullopt : std::optional<std::int64_t>(parse_integer<std::int64_t>(key, value));
  } else if (key == "epsilon") {
    c.epsilon = parse_real(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return config_from_json(j.contains("config") ? j.at("config") : j);
  }
  return parse_config_text(text, std::move(base));
}

std::string to_config_text(const ExperimentConfig& c) {
  const nlohmann::json j = to_json(c);
  std::ostringstream out;
  for (const auto& [key, value] : j.items()) {
    out << key << " = ";
    if (value.is_null()) {
      out << "none";
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out << ',';
        out << format_real(value[i].get<double>());
      }
      if (value.empty()) out << "none";
    } else if (value.is_number_float()) {
      out << format_real(value.get<double>());
    } else {
      out << value.dump();
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["experiment"] = std::string(to_string(c.experiment));
  j["n"] = optional_json(c.n);
  j["steps"] = optional_json(c.steps);
  j["samples"] = c.samples;
  j["ensemble"] = c.ensemble;
  j["boundary"] = c.boundary;
  j["p"] = c.p;
  j["schedule"] = c.schedule;
  j["h"] = c.h;
  j["h_grid"] = c.h_grid;
  j["homogeneous"] = c.homogeneous;
  j["mode"] = c.mode;
  j["operator_complexity"] = c.operator_complexity;
  j["window"] = optional_json(c.window);
  j["rel_tol"] = c.rel_tol;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["out"] = c.out;
  j["format"] = c.format;
  j["formula"] = c.formula;
  j["d"] = optional_json(c.d);
  j["m"] = optional_json(c.m);
  j["t"] = optional_json(c.t);
  j["epsilon"] = c.epsilon;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config JSON must be an object");
  ExperimentConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "h_grid") {
        c.h_grid = value.is_null() ? std::vector<double>{} : value.get<std::vector<double>>();
      } else if (value.is_null()) {
        apply_setting(c, key, "none");
      } else if (value.is_string()) {
        apply_setting(c, key, value.get<std::string>());
      } else if (value.is_boolean()) {
        apply_setting(c, key, value.get<bool>() ? "true" : "false");
      } else if (value.is_number_float()) {
        // Assign reals directly so no digits are lost to a text round trip.
        if (key == "p") c.p = value.get<double>();
        else if (key == "h") c.h = value.get<double>();
        else if (key == "rel_tol") c.rel_tol = value.get<double>();
        else if (key == "epsilon") c.epsilon = value.get<double>();
        else apply_setting(c, key, value.dump());
      } else if (value.is_number()) {
        apply_setting(c, key, value.dump());
      } else {
        throw ConfigError("unsupported JSON value for " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  return c;
}

int resolved_n(const ExperimentConfig& c) {
  if (c.n) return *c.n;
  switch (c.experiment) {
    case Experiment::Gaussian: return 100;
    case Experiment::Analytics: return 0;
    default: return c.operator_complexity ? 3 : 8;
  }
}

std::size_t resolved_steps(const ExperimentConfig& c) {
  if (c.steps) return *c.steps;
  if (c.experiment == Experiment::Gaussian) return 512;
  const int n = resolved_n(c);
  if (n < 1 || n > 30) return 0;
  // 4·D, with D = 2^N for states and 4^N for operators.
  const int bits = c.operator_complexity ? 2 * n : n;
  return std::size_t{4} << bits;
}

std::string resolved_ensemble(const ExperimentConfig& c) {
  if (c.experiment == Experiment::MblScan) return "mbl";
  if (c.ensemble.empty()) return c.experiment == Experiment::Gaussian ? "so4" : "haar_u4";
  if (c.ensemble == "global") return "global";
  if (auto kind = parse_gate_kind(c.ensemble)) return std::string(to_string(*kind));
  return c.ensemble;
}

std::vector<double> resolved_h_grid(const ExperimentConfig& c) {
  if (!c.h_grid.empty()) return c.h_grid;
  std::vector<double> grid;
  for (int k = 1; k <= 12; ++k) grid.push_back(static_cast<double>(k) * 5.0 / 100.0);
  return grid;
}

void validate(const ExperimentConfig& c) {
  if (c.format != "csv") throw ConfigError("only format = csv is supported");
  if (c.samples < 1) throw ConfigError("samples must be >= 1");
  if (!(c.rel_tol > 0.0 && c.rel_tol < 1.0)) throw ConfigError("rel_tol must lie in (0, 1)");
  if (!parse_boundary(c.boundary)) throw ConfigError("boundary must be open or periodic");
  if (c.window && *c.window == 0) throw ConfigError("window must be >= 1");

  const int n = resolved_n(c);
  const std::string ensemble = resolved_ensemble(c);
  const double steps = static_cast<double>(resolved_steps(c));

  if (c.experiment == Experiment::Analytics) {
    static const std::vector<std::string> formulas = {
        "expected_complexity", "exact_expected_complexity", "coverage", "partial_coverage",
        "saturation_bound",    "min_complexity"};
    if (std::find(formulas.begin(), formulas.end(), c.formula) == formulas.end()) {
      throw ConfigError("unknown analytics formula '" + c.formula + "'");
    }
    if (!c.d || *c.d < 1) throw ConfigError("analytics needs d >= 1");
    const bool needs_t = c.formula == "expected_complexity" ||
                         c.formula == "exact_expected_complexity" || c.formula == "min_complexity";
    if (needs_t && (!c.t || *c.t < 0)) throw ConfigError(c.formula + " needs t >= 0");
    if (c.formula == "min_complexity" && *c.t < 1) throw ConfigError("min_complexity needs t >= 1");
    if ((c.formula == "coverage" || c.formula == "partial_coverage") && (!c.n || *c.n < 0)) {
      throw ConfigError(c.formula + " needs n >= 0 draws");
    }
    if (c.formula == "partial_coverage" && (!c.m || *c.m < 0)) {
      throw ConfigError("partial_coverage needs m >= 0");
    }
    if (c.formula == "saturation_bound" && !(c.epsilon > 0.0 && c.epsilon < 1.0)) {
      throw ConfigError("epsilon must lie in (0, 1)");
    }
    return;
  }

  if (c.experiment == Experiment::Gaussian) {
    if (n < 2 || n % 2 != 0) throw ConfigError("gaussian needs an even n >= 2");
    if (ensemble != "so4" && ensemble != "o4") throw ConfigError("gaussian ensemble must be so4 or o4");
    const auto mode = gaussian::parse_mode(c.mode);
    if (!mode) throw ConfigError("mode must be single_particle or covariance_hs");
    const double dim = *mode == gaussian::Mode::SingleParticle ? 2.0 * n : 4.0 * n * n;
    check_basis_memory(dim, steps, 8.0);
    return;
  }

  if (c.operator_complexity) {
    if (c.experiment != Experiment::Ruc || ensemble != "global") {
      throw ConfigError("operator_complexity is only available for ruc with ensemble = global");
    }
    if (n < 1) throw ConfigError("n must be >= 1");
    if (n > kMaxOperatorQubits) {
      throw ResourceLimit("operator runs are capped at n <= " + std::to_string(kMaxOperatorQubits));
    }
    return;
  }

  if (is_state_experiment(c.experiment)) {
    if (n < 2) throw ConfigError("n must be >= 2");
    if (n > kMaxStateQubits) {
      throw ResourceLimit("statevector runs are capped at n <= " + std::to_string(kMaxStateQubits));
    }
    if (*parse_boundary(c.boundary) == Boundary::Periodic && n % 2 != 0) {
      throw ConfigError("periodic boundary needs an even n");
    }
    check_basis_memory(std::ldexp(1.0, n), steps, 16.0);
  }

  switch (c.experiment) {
    case Experiment::Ruc:
    case Experiment::Monitored: {
      const bool gate_ok = ensemble == "haar_u4" || ensemble == "so4" || ensemble == "o4" ||
                           ensemble == "mbl" || (ensemble == "global" && c.experiment == Experiment::Ruc);
      if (!gate_ok) throw ConfigError("unsupported ensemble '" + c.ensemble + "'");
      if (ensemble == "mbl" && !(c.h >= 0.0)) throw ConfigError("h must be >= 0");
      if (c.experiment == Experiment::Monitored) {
        if (!(c.p >= 0.0 && c.p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
        if (c.schedule != "per_half_layer" && c.schedule != "per_step") {
          throw ConfigError("schedule must be per_half_layer or per_step");
        }
      }
      break;
    }
    case Experiment::Spins:
      if (ensemble != "haar_u4" && ensemble != "mbl") {
        throw ConfigError("spins ensemble must be haar or mbl");
      }
      if (ensemble == "mbl" && !(c.h >= 0.0)) throw ConfigError("h must be >= 0");
      break;
    case Experiment::MblScan:
      for (double h : resolved_h_grid(c)) {
        if (!(h >= 0.0)) throw ConfigError("h_grid values must be >= 0");
      }
      if (resolved_h_grid(c).size() < 2) throw ConfigError("h_grid needs at least two values");
      break;
    default:
      break;
  }
}

}  // namespace krylov::tools
