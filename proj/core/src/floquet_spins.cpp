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

#include "krylov/floquet_spins.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "krylov/error.hpp"

namespace krylov::spins {

FloquetSpinCircuit build_floquet_circuit(int n_qubits, const GateEnsemble& ensemble, Rng& rng,
                                         Boundary boundary) {
  if (n_qubits < 2) throw InvalidParameter("Floquet spin circuits need N >= 2");
  FloquetSpinCircuit c;
  c.n_qubits = n_qubits;
  c.boundary = boundary;
  c.ensemble = ensemble;
  c.even = sample_layer(Parity::Even, n_qubits, boundary, ensemble, rng);
  c.odd = sample_layer(Parity::Odd, n_qubits, boundary, ensemble, rng);
  return c;
}

ComplexitySeries run_floquet_realization(const FloquetRunConfig& config, std::uint64_t seed) {
  check_state_qubits(config.n_qubits);
  Rng rng = make_stream(seed, {kGateStream});
  const FloquetSpinCircuit circuit =
      build_floquet_circuit(config.n_qubits, config.ensemble, rng, config.boundary);
  QuantumState psi0 = config.initial.value_or(QuantumState::alternating(config.n_qubits));
  StateEvolver evolver = [&circuit](QuantumState& s) { circuit.step(s); };
  return run_state_complexity(evolver, std::move(psi0), config.steps);
}

DisorderAverage run_floquet_complexity(const FloquetRunConfig& config,
                                       const AverageOptions& options) {
  check_state_qubits(config.n_qubits);
  if (options.samples < 1) throw InvalidParameter("need at least one sample");
  return run_disorder_average(
      [&](std::size_t, std::uint64_t seed) { return run_floquet_realization(config, seed); },
      options);
}

std::optional<double> interpolate_crossing(const std::vector<double>& h,
                                           const std::vector<double>& normalized, double level) {
  if (h.size() != normalized.size()) throw InvalidDimension("h and curve lengths differ");
  for (std::size_t i = 1; i < h.size(); ++i) {
    const double a = normalized[i - 1];
    const double b = normalized[i];
    if (a < level && b >= level) {
      const double frac = (level - a) / (b - a);
      return h[i - 1] + frac * (h[i] - h[i - 1]);
    }
  }
  return std::nullopt;
}

TransitionScan scan_mbl_transition(const ScanConfig& config, const AverageOptions& options) {
  check_state_qubits(config.n_qubits);
  if (config.h_grid.empty()) throw InvalidParameter("h grid is empty");
  TransitionScan scan;
  std::vector<double> grid = config.h_grid;
  for (double h : grid) {
    if (!std::isfinite(h) || h < 0.0) throw InvalidParameter("h values must be finite and >= 0");
  }
  std::sort(grid.begin(), grid.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && grid[i] == grid[i - 1]) {
      std::ostringstream msg;
      msg << "duplicate h = " << grid[i] << " dropped";
      scan.warnings.push_back(msg.str());
      continue;
    }
    scan.h.push_back(grid[i]);
  }

  const std::size_t steps =
      config.steps > 0 ? config.steps : std::size_t{4} << config.n_qubits;
  for (std::size_t k = 0; k < scan.h.size(); ++k) {
    FloquetRunConfig run;
    run.n_qubits = config.n_qubits;
    run.boundary = config.boundary;
    run.ensemble = GateEnsemble::mbl(scan.h[k]);
    run.steps = steps;
    AverageOptions opts = options;
    opts.stream_prefix.push_back(k);
    if (!opts.saturation.window && scan.h[k] < config.weak_coupling_h) {
      opts.saturation.window = std::max<std::size_t>(10, steps / 5);
    }
    DisorderAverage avg = run_floquet_complexity(run, opts);
    if (!avg.saturation) throw InsufficientData("series too short for a plateau estimate");
    scan.c_inf.push_back(avg.saturation->c_inf);
    scan.c_inf_stderr.push_back(avg.c_inf_stderr);
    scan.runs.push_back(std::move(avg));
  }

  const double reference = config.normalization_reference.value_or(scan.c_inf.back());
  if (!(reference > 0.0)) throw InvalidParameter("normalization reference must be positive");
  for (double c : scan.c_inf) scan.normalized.push_back(c / reference);
  scan.h0 = interpolate_crossing(scan.h, scan.normalized, config.crossing_level);
  if (!scan.h0) {
    throw EstimationError("normalized C_inf never crosses the target level on this grid",
                          std::move(scan));
  }
  return scan;
}

}  // namespace krylov::spins
