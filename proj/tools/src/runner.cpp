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

#include "krylov/tools/runner.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "krylov/analytics.hpp"
#include "krylov/circuits.hpp"
#include "krylov/floquet_spins.hpp"
#include "krylov/gaussian.hpp"
#include "krylov/version.hpp"

namespace krylov::tools {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

GateEnsemble make_ensemble(const std::string& name, double h) {
  if (name == "mbl") return GateEnsemble::mbl(h);
  if (name == "so4") return GateEnsemble::so4();
  if (name == "o4") return GateEnsemble::o4();
  return GateEnsemble::haar_u4();
}

AverageOptions average_options(const ExperimentConfig& c) {
  AverageOptions o;
  o.samples = c.samples;
  o.master_seed = c.seed;
  o.workers = c.workers;
  o.saturation.window = c.window;
  o.saturation.rel_tol = c.rel_tol;
  return o;
}

nlohmann::json summary_params(const ExperimentConfig& c) {
  nlohmann::json p = to_json(c);
  // Neither affects any number produced.
  p.erase("out");
  p.erase("workers");
  p["n"] = resolved_n(c);
  p["steps"] = resolved_steps(c);
  p["ensemble"] = resolved_ensemble(c);
  if (c.experiment == Experiment::MblScan) p["h_grid"] = resolved_h_grid(c);
  return p;
}

nlohmann::json base_summary(const ExperimentConfig& c) {
  nlohmann::json s;
  s["experiment"] = std::string(to_string(c.experiment));
  s["params"] = summary_params(c);
  s["t_sat"] = nullptr;
  s["c_inf"] = nullptr;
  s["c_inf_stderr"] = nullptr;
  s["seed"] = c.seed;
  s["version"] = kVersion;
  return s;
}

void fill_saturation(nlohmann::json& summary, const DisorderAverage& avg) {
  if (avg.saturation) {
    summary["t_sat"] = avg.saturation->t_sat;
    summary["c_inf"] = avg.saturation->c_inf;
    summary["c_inf_stderr"] = avg.c_inf_stderr;
  }
}

DisorderAverage run_single(const ExperimentConfig& c) {
  const AverageOptions opts = average_options(c);
  const int n = resolved_n(c);
  const std::size_t steps = resolved_steps(c);
  const std::string ensemble = resolved_ensemble(c);
  const Boundary boundary = *parse_boundary(c.boundary);

  switch (c.experiment) {
    case Experiment::Ruc:
    case Experiment::Monitored: {
      if (ensemble == "global") {
        if (c.operator_complexity) {
          OperatorHaarRunConfig run;
          run.n_qubits = n;
          run.steps = steps;
          return run_operator_haar_ensemble(run, opts);
        }
        GlobalHaarRunConfig run;
        run.n_qubits = n;
        run.steps = steps;
        return run_global_haar_ensemble(run, opts);
      }
      BrickworkRunConfig run;
      run.n_qubits = n;
      run.boundary = boundary;
      run.ensemble = make_ensemble(ensemble, c.h);
      run.steps = steps;
      if (c.experiment == Experiment::Monitored) {
        run.p = c.p;
        run.schedule = c.schedule == "per_step" ? MeasurementSchedule::PerStep
                                                : MeasurementSchedule::PerHalfLayer;
      }
      return run_brickwork_ensemble(run, opts);
    }
    case Experiment::Gaussian: {
      gaussian::GaussianRunConfig run;
      run.n_sites = n;
      run.homogeneous = c.homogeneous;
      run.mode = *gaussian::parse_mode(c.mode);
      run.ensemble = make_ensemble(ensemble, c.h);
      run.steps = steps;
      return gaussian::run_gaussian_ensemble(run, opts);
    }
    case Experiment::Spins: {
      spins::FloquetRunConfig run;
      run.n_qubits = n;
      run.boundary = boundary;
      run.ensemble = make_ensemble(ensemble, c.h);
      run.steps = steps;
      return spins::run_floquet_complexity(run, opts);
    }
    default:
      throw ConfigError("experiment has no single-run pipeline");
  }
}

std::string scan_table(const spins::TransitionScan& scan) {
  std::ostringstream out;
  out << "h,c_inf,c_inf_stderr,normalized\n";
  for (std::size_t i = 0; i < scan.c_inf.size(); ++i) {
    out << shortest(scan.h[i]) << ',' << shortest(scan.c_inf[i]) << ','
        << shortest(scan.c_inf_stderr[i]) << ',' << shortest(scan.normalized.at(i)) << '\n';
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

nlohmann::json evaluate_analytics(const ExperimentConfig& c) {
  validate(c);
  const auto d = static_cast<std::uint64_t>(*c.d);
  if (c.formula == "expected_complexity") {
    return analytics::expected_complexity_haar(static_cast<std::uint64_t>(*c.t), d);
  }
  if (c.formula == "exact_expected_complexity") {
    return analytics::exact_expected_complexity_haar(static_cast<std::uint64_t>(*c.t), d);
  }
  if (c.formula == "coverage") {
    return analytics::coverage_probability(static_cast<std::uint64_t>(*c.n), d);
  }
  if (c.formula == "partial_coverage") {
    return analytics::partial_coverage_probability(static_cast<std::uint64_t>(*c.n),
                                                   static_cast<std::uint64_t>(*c.m), d);
  }
  if (c.formula == "saturation_bound") {
    const auto b = analytics::saturation_time_bound(d, c.epsilon);
    return {{"draws", b.draws}, {"proxy", b.proxy}};
  }
  const auto e = analytics::min_complexity_estimate(static_cast<std::uint64_t>(*c.t), d);
  return {{"m_max", e.m_max},
          {"estimate", e.estimate},
          {"proxy", e.proxy},
          {"expectation", e.expectation}};
}

RunResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.config = config;
  result.summary = base_summary(config);
  nlohmann::json seeds = nlohmann::json::array();
  nlohmann::json extra = nlohmann::json::object();

  if (config.experiment == Experiment::Analytics) {
    result.summary["value"] = evaluate_analytics(config);
  } else if (config.experiment == Experiment::MblScan) {
    spins::ScanConfig scan_config;
    scan_config.n_qubits = resolved_n(config);
    scan_config.h_grid = resolved_h_grid(config);
    scan_config.boundary = *parse_boundary(config.boundary);
    scan_config.steps = resolved_steps(config);
    spins::TransitionScan scan;
    try {
      scan = spins::scan_mbl_transition(scan_config, average_options(config));
    } catch (const spins::EstimationError& e) {
      scan = e.partial();
      result.error = error_line(e);
    }
    for (std::size_t i = 0; i < scan.runs.size(); ++i) {
      result.extra_series.push_back({"h" + shortest(scan.h[i]), scan.runs[i].series});
      seeds.push_back(scan.runs[i].seeds);
    }
    if (!scan.runs.empty()) {
      result.series = scan.runs.back().series;
      fill_saturation(result.summary, scan.runs.back());
    }
    result.table_csv = scan_table(scan);
    result.summary["h0"] = scan.h0 ? nlohmann::json(*scan.h0) : nlohmann::json(nullptr);
    extra["warnings"] = scan.warnings;
    extra["h"] = scan.h;
    extra["c_inf"] = scan.c_inf;
    extra["c_inf_stderr"] = scan.c_inf_stderr;
  } else {
    const DisorderAverage avg = run_single(config);
    result.series = avg.series;
    fill_saturation(result.summary, avg);
    seeds = avg.seeds;
    const auto completion = mean_completion_step(avg);
    extra["t_complete_mean"] = completion ? nlohmann::json(*completion) : nlohmann::json(nullptr);
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.manifest["config"] = to_json(config);
  result.manifest["version"] = kVersion;
  result.manifest["wall_clock_seconds"] = seconds;
  result.manifest["seeds"] = std::move(seeds);
  result.manifest["summary"] = result.summary;
  for (auto& [key, value] : extra.items()) result.manifest["derived"][key] = value;
  return result;
}

std::string series_csv(const AveragedSeries& series) {
  std::ostringstream out;
  out << "t,c_mean,c_stderr,n_samples\n";
  for (std::size_t t = 0; t < series.mean.size(); ++t) {
    out << t << ',' << shortest(series.mean[t]) << ',' << shortest(series.standard_error[t])
        << ',' << series.samples << '\n';
  }
  return out.str();
}

void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (result.config.experiment != Experiment::Analytics) {
    write_file(dir / "series.csv", series_csv(result.series));
  }
  for (const auto& extra : result.extra_series) {
    write_file(dir / ("series_" + extra.name + ".csv"), series_csv(extra.series));
  }
  if (!result.table_csv.empty()) write_file(dir / "table.csv", result.table_csv);
  write_file(dir / "summary.json", result.summary.dump(2) + "\n");
  write_file(dir / "manifest.json", result.manifest.dump(2) + "\n");
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ResourceLimit*>(&e)) return kExitResource;
  if (dynamic_cast<const NumericalInconsistency*>(&e)) return kExitNumerical;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidParameter*>(&e) ||
      dynamic_cast<const InvalidDimension*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

std::string error_line(const std::exception& e) {
  const auto* known = dynamic_cast<const Error*>(&e);
  nlohmann::json j;
  j["error"] = known ? known->kind() : "runtime";
  j["message"] = e.what();
  j["exit_code"] = exit_code_for(e);
  return j.dump();
}

std::vector<std::pair<std::string, ExperimentConfig>> reproduction_plan(
    const std::string& figure, const ExperimentConfig& base) {
  std::vector<std::pair<std::string, ExperimentConfig>> plan;
  auto make = [&](Experiment e) {
    ExperimentConfig c;
    c.experiment = e;
    c.seed = base.seed;
    c.workers = base.workers;
    c.samples = base.samples;
    return c;
  };
  if (figure == "fig1") {
    for (int n = 5; n <= 8; ++n) {
      ExperimentConfig c = make(Experiment::Ruc);
      c.n = n;
      plan.emplace_back("ruc_n" + std::to_string(n), c);
    }
    for (int n = 5; n <= 6; ++n) {
      for (int k = 0; k <= 9; ++k) {
        ExperimentConfig c = make(Experiment::Monitored);
        c.n = n;
        c.p = k / 10.0;
        // Completion under heavy monitoring is coupon-collector limited.
        c.steps = std::size_t{16} << n;
        plan.emplace_back("monitored_n" + std::to_string(n) + "_p" + shortest(c.p), c);
      }
    }
  } else if (figure == "fig2") {
    for (bool homogeneous : {true, false}) {
      ExperimentConfig c = make(Experiment::Gaussian);
      c.n = 100;
      c.homogeneous = homogeneous;
      plan.emplace_back(homogeneous ? "gaussian_homogeneous_n100" : "gaussian_inhomogeneous_n100",
                        c);
    }
    for (int n : {20, 40, 60, 80}) {
      ExperimentConfig c = make(Experiment::Gaussian);
      c.n = n;
      plan.emplace_back("gaussian_inhomogeneous_n" + std::to_string(n), c);
    }
  } else if (figure == "fig3") {
    ExperimentConfig haar = make(Experiment::Spins);
    haar.n = 6;
    haar.ensemble = "haar_u4";
    plan.emplace_back("spins_haar_n6", haar);
    for (int n = 5; n <= 6; ++n) {
      ExperimentConfig c = make(Experiment::MblScan);
      c.n = n;
      plan.emplace_back("mbl_scan_n" + std::to_string(n), c);
    }
  } else {
    throw ConfigError("unknown figure '" + figure + "' (expected fig1, fig2 or fig3)");
  }
  return plan;
}

}  // namespace krylov::tools
