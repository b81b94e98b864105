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

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "krylov/complexity.hpp"
#include "krylov/error.hpp"
#include "krylov/statevector.hpp"

/// Time-periodic brickwork spin circuits: one draw of both layers, repeated.
namespace krylov::spins {

struct FloquetSpinCircuit {
  int n_qubits = 0;
  Boundary boundary = Boundary::Open;
  GateEnsemble ensemble = GateEnsemble::haar_u4();
  BrickworkLayer odd;
  BrickworkLayer even;

  /// One Floquet period: even layer, then odd layer.
  void step(QuantumState& state) const { brickwork_step(state, odd, even, boundary); }
};

/// Draws the even layer, then the odd layer, once. Throws InvalidParameter
/// for N < 2.
FloquetSpinCircuit build_floquet_circuit(int n_qubits, const GateEnsemble& ensemble, Rng& rng,
                                         Boundary boundary = Boundary::Open);

struct FloquetRunConfig {
  int n_qubits = 8;
  GateEnsemble ensemble = GateEnsemble::haar_u4();
  Boundary boundary = Boundary::Open;
  std::size_t steps = 0;
  std::optional<QuantumState> initial;
};

ComplexitySeries run_floquet_realization(const FloquetRunConfig& config, std::uint64_t seed);

/// Mean C(t) over fresh circuit draws.
DisorderAverage run_floquet_complexity(const FloquetRunConfig& config,
                                       const AverageOptions& options);

struct TransitionScan {
  std::vector<double> h;
  std::vector<double> c_inf;
  std::vector<double> c_inf_stderr;
  std::vector<double> normalized;
  std::optional<double> h0;
  std::vector<std::string> warnings;
  std::vector<DisorderAverage> runs;
};

/// Raised when the normalized curve never crosses the target level; carries
/// everything computed so far.
class EstimationError : public Error {
 public:
  EstimationError(const std::string& what, TransitionScan partial)
      : Error(what), partial_(std::move(partial)) {}
  const char* kind() const noexcept override { return "estimation"; }
  const TransitionScan& partial() const noexcept { return partial_; }

 private:
  TransitionScan partial_;
};

struct ScanConfig {
  int n_qubits = 8;
  std::vector<double> h_grid;
  Boundary boundary = Boundary::Open;
  std::size_t steps = 0;
  /// Level of C_inf(h)/C_inf(h_max) whose crossing defines h0.
  double crossing_level = 0.5;
  /// Normalizing C_inf; the value at the largest h when empty.
  std::optional<double> normalization_reference;
  /// Below this h the plateau window grows to T/5 (slow saturation).
  double weak_coupling_h = 0.2;
};

/// First upward crossing of `level` by `normalized`, linearly interpolated in
/// h. Empty when the curve never crosses from below.
std::optional<double> interpolate_crossing(const std::vector<double>& h,
                                           const std::vector<double>& normalized, double level);

/// Runs run_floquet_complexity for every h (sorted, duplicates dropped with a
/// warning). Realization seeds derive from (master_seed, h index, index).
/// Throws EstimationError when no crossing is found.
TransitionScan scan_mbl_transition(const ScanConfig& config, const AverageOptions& options);

}  // namespace krylov::spins
