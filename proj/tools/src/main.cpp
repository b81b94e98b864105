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

// krylov: command-line front end for the complexity experiments.

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "krylov/tools/config.hpp"
#include "krylov/tools/runner.hpp"
#include "krylov/version.hpp"

namespace kt = krylov::tools;

namespace {

// A command-line value destined for one config key; applied only if given.
struct Setting {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

class SettingList {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    auto s = std::make_unique<Setting>();
    s->key = key;
    s->option = app->add_option(flag, s->value, help);
    items_.push_back(std::move(s));
  }
  void add_switch(CLI::App* app, const std::string& flag, const std::string& key,
                  const std::string& help) {
    auto s = std::make_unique<Setting>();
    s->key = key;
    s->value = "true";
    s->option = app->add_flag(flag, help);
    items_.push_back(std::move(s));
  }
  void apply(kt::ExperimentConfig& config) const {
    for (const auto& s : items_) {
      if (s->option->count() > 0) kt::apply_setting(config, s->key, s->value);
    }
  }

 private:
  std::vector<std::unique_ptr<Setting>> items_;
};

void add_run_options(CLI::App* sub, SettingList& settings) {
  settings.add(sub, "--n", "n", "number of qubits (fermionic pairs for gaussian)");
  settings.add(sub, "--steps,--t-max", "steps", "time steps T (default 4*2^N, 512 for gaussian)");
  settings.add(sub, "--samples", "samples", "disorder realizations");
  settings.add(sub, "--boundary", "boundary", "open or periodic");
  settings.add(sub, "--window", "window", "plateau window (default max(10, T/10))");
  settings.add(sub, "--rel-tol", "rel_tol", "relative tolerance of the saturation time");
}

int run_and_report(const kt::ExperimentConfig& config, const std::string& out_dir) {
  const kt::RunResult result = kt::run_experiment(config);
  kt::write_outputs(result, out_dir);
  std::cout << result.summary.dump() << '\n';
  if (!result.error.empty()) {
    std::cerr << result.error << '\n';
    return kt::kExitFailure;
  }
  return kt::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov spread complexity of random quantum circuits", "krylov"};
  app.set_version_flag("--version", std::string(krylov::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  SettingList globals;
  globals.add(&app, "--seed", "seed", "master seed");
  globals.add(&app, "--workers", "workers", "worker threads (0 = all cores)");
  globals.add(&app, "--out", "out", "output directory");
  std::string config_file;
  app.add_option("--config", config_file, "key = value config file (flags override it)");

  std::vector<std::pair<CLI::App*, std::unique_ptr<SettingList>>> subs;
  auto make_sub = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    // "--h" is the MBL coupling, so help is long-form only.
    sub->set_help_flag("--help", "print this help message and exit");
    subs.emplace_back(sub, std::make_unique<SettingList>());
    return std::pair<CLI::App*, SettingList*>(sub, subs.back().second.get());
  };

  auto [ruc, ruc_s] = make_sub("ruc", "brickwork random unitary circuit");
  add_run_options(ruc, *ruc_s);
  ruc_s->add(ruc, "--ensemble", "ensemble", "haar_u4, so4, o4, mbl or global");
  ruc_s->add(ruc, "--h", "h", "coupling for the mbl ensemble");
  ruc_s->add_switch(ruc, "--operator", "operator_complexity",
                    "K-complexity of Z_0 (with --ensemble global)");

  auto [mon, mon_s] = make_sub("monitored", "brickwork circuit with projective measurements");
  add_run_options(mon, *mon_s);
  mon_s->add(mon, "--p", "p", "measurement rate per site");
  mon_s->add(mon, "--schedule", "schedule", "per_half_layer or per_step");
  mon_s->add(mon, "--ensemble", "ensemble", "haar_u4, so4, o4 or mbl");

  auto [gau, gau_s] = make_sub("gaussian", "Floquet free-fermion circuit");
  add_run_options(gau, *gau_s);
  gau_s->add_switch(gau, "--homogeneous", "homogeneous", "same P and Q blocks on every pair");
  gau_s->add(gau, "--mode", "mode", "single_particle or covariance_hs");
  gau_s->add(gau, "--ensemble", "ensemble", "so4 or o4");

  auto [spn, spn_s] = make_sub("spins", "Floquet brickwork spin circuit");
  add_run_options(spn, *spn_s);
  spn_s->add(spn, "--ensemble", "ensemble", "haar or mbl");
  spn_s->add(spn, "--h", "h", "coupling for the mbl ensemble");

  auto [scan, scan_s] = make_sub("mbl-scan", "C_inf across MBL couplings and crossover estimate");
  add_run_options(scan, *scan_s);
  scan_s->add(scan, "--h-grid", "h_grid", "comma list or lo:hi:step");

  auto [ana, ana_s] = make_sub("analytics", "evaluate a closed-form expression");
  std::string formula;
  ana->add_option("formula", formula,
                  "expected_complexity, exact_expected_complexity, coverage, partial_coverage, "
                  "saturation_bound or min_complexity")
      ->required();
  ana_s->add(ana, "--d", "d", "Hilbert-space dimension");
  ana_s->add(ana, "--n", "n", "number of draws");
  ana_s->add(ana, "--m", "m", "number of distinct outcomes");
  ana_s->add(ana, "--t", "t", "time step");
  ana_s->add(ana, "--epsilon", "epsilon", "failure probability");

  auto [rep, rep_s] = make_sub("reproduce", "canned desk-scale runs for one figure");
  std::string figure;
  rep->add_option("figure", figure, "fig1, fig2 or fig3")->required();
  rep_s->add(rep, "--samples", "samples", "realizations per run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    kt::ConfigError err(e.what());
    std::cerr << kt::error_line(err) << '\n';
    return kt::kExitConfig;
  }

  try {
    kt::ExperimentConfig config;
    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (name != "reproduce") config.experiment = *kt::parse_experiment(name);
    if (!config_file.empty()) {
      config = kt::load_config_file(config_file, config);
      if (name != "reproduce") config.experiment = *kt::parse_experiment(name);
    }
    globals.apply(config);
    for (const auto& [sub, settings] : subs) {
      if (sub == chosen) settings->apply(config);
    }

    if (name == "analytics") {
      config.formula = formula;
      std::cout << kt::evaluate_analytics(config).dump() << '\n';
      return kt::kExitOk;
    }
    if (name == "reproduce") {
      int status = kt::kExitOk;
      for (const auto& [label, run] : kt::reproduction_plan(figure, config)) {
        std::cerr << "running " << figure << '/' << label << '\n';
        const int s = run_and_report(run, config.out + "/" + figure + "/" + label);
        if (s != kt::kExitOk) status = s;
      }
      return status;
    }
    return run_and_report(config, config.out);
  } catch (const std::exception& e) {
    std::cerr << kt::error_line(e) << '\n';
    return kt::exit_code_for(e);
  }
}
