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

#include "krylov/complexity.hpp"
#include "krylov/statevector.hpp"

// Random (non-periodic) circuit drivers: every time step draws fresh gates.
namespace krylov {

struct BrickworkRunConfig {
  int n_qubits = 8;
  Boundary boundary = Boundary::Open;
  GateEnsemble ensemble = GateEnsemble::haar_u4();
  /// Per-site measurement rate; 0 gives the unitary circuit.
  double p = 0.0;
  MeasurementSchedule schedule = MeasurementSchedule::PerHalfLayer;
  std::size_t steps = 0;
  /// |0101...> when empty.
  std::optional<QuantumState> initial;
};

/// Evolver for one realization: fresh layers from `gate_rng` every step and,
/// when p > 0, measurement randomness from `measurement_rng`. Both generators
/// must outlive the evolver.
StateEvolver make_brickwork_evolver(const BrickworkRunConfig& config, Rng& gate_rng,
                                    Rng& measurement_rng);

ComplexitySeries run_brickwork_realization(const BrickworkRunConfig& config,
                                           std::uint64_t seed);

DisorderAverage run_brickwork_ensemble(const BrickworkRunConfig& config,
                                       const AverageOptions& options);

struct GlobalHaarRunConfig {
  int n_qubits = 8;
  std::size_t steps = 0;
  /// Apply an explicitly sampled D x D Haar unitary each step (O(D³)). When
  /// false the state is replaced by a fresh Haar-random state, which has the
  /// same law as U|ψ> for Haar U independent of |ψ>.
  bool explicit_unitaries = false;
  std::optional<QuantumState> initial;
};

ComplexitySeries run_global_haar_realization(const GlobalHaarRunConfig& config,
                                             std::uint64_t seed);

DisorderAverage run_global_haar_ensemble(const GlobalHaarRunConfig& config,
                                         const AverageOptions& options);

/// Pauli Z on one qubit as a dense 2^N x 2^N matrix; (Z|Z) = 1.
CMatrix pauli_z_operator(int n_qubits, int site);

struct OperatorHaarRunConfig {
  int n_qubits = 3;
  std::size_t steps = 0;
  /// Z on qubit 0 when empty.
  std::optional<CMatrix> initial;
};

/// K-complexity under O -> U†OU with a fresh Haar U per step.
DisorderAverage run_operator_haar_ensemble(const OperatorHaarRunConfig& config,
                                           const AverageOptions& options);

}  // namespace krylov
