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

#include "krylov/circuits.hpp"

#include <memory>

#include "krylov/error.hpp"

namespace krylov {

StateEvolver make_brickwork_evolver(const BrickworkRunConfig& config, Rng& gate_rng,
                                    Rng& measurement_rng) {
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    throw InvalidParameter("measurement rate p must lie in [0, 1]");
  }
  auto time = std::make_shared<std::int64_t>(0);
  return [config, &gate_rng, &measurement_rng, time](QuantumState& state) {
    ++*time;
    BrickworkLayer even =
        sample_layer(Parity::Even, config.n_qubits, config.boundary, config.ensemble, gate_rng);
    BrickworkLayer odd =
        sample_layer(Parity::Odd, config.n_qubits, config.boundary, config.ensemble, gate_rng);
    if (config.p > 0.0) {
      monitored_step(state, odd, even, config.p, measurement_rng, config.boundary,
                     config.schedule, *time);
    } else {
      brickwork_step(state, odd, even, config.boundary);
    }
  };
}

ComplexitySeries run_brickwork_realization(const BrickworkRunConfig& config,
                                           std::uint64_t seed) {
  check_state_qubits(config.n_qubits);
  Rng gates = make_stream(seed, {kGateStream});
  Rng measurements = make_stream(seed, {kMeasurementStream});
  StateEvolver evolver = make_brickwork_evolver(config, gates, measurements);
  QuantumState psi0 = config.initial.value_or(QuantumState::alternating(config.n_qubits));
  return run_state_complexity(evolver, std::move(psi0), config.steps);
}

DisorderAverage run_brickwork_ensemble(const BrickworkRunConfig& config,
                                       const AverageOptions& options) {
  check_state_qubits(config.n_qubits);
  return run_disorder_average(
      [&](std::size_t, std::uint64_t seed) { return run_brickwork_realization(config, seed); },
      options);
}

ComplexitySeries run_global_haar_realization(const GlobalHaarRunConfig& config,
                                             std::uint64_t seed) {
  check_state_qubits(config.n_qubits);
  Rng rng = make_stream(seed, {kStateStream});
  StateEvolver evolver;
  if (config.explicit_unitaries) {
    evolver = [&rng](QuantumState& s) {
      UnitaryMatrix u = sample_haar_unitary(s.dim(), rng);
      CVector next = u.matrix() * s.amplitudes();
      s.mutable_amplitudes() = next / next.norm();
    };
  } else {
    evolver = [&rng](QuantumState& s) { s.mutable_amplitudes() = sample_haar_state(s.dim(), rng); };
  }
  QuantumState psi0 = config.initial.value_or(QuantumState::alternating(config.n_qubits));
  return run_state_complexity(evolver, std::move(psi0), config.steps);
}

DisorderAverage run_global_haar_ensemble(const GlobalHaarRunConfig& config,
                                         const AverageOptions& options) {
  check_state_qubits(config.n_qubits);
  return run_disorder_average(
      [&](std::size_t, std::uint64_t seed) { return run_global_haar_realization(config, seed); },
      options);
}

CMatrix pauli_z_operator(int n_qubits, int site) {
  if (n_qubits < 1 || n_qubits > kMaxOperatorQubits) {
    throw ResourceLimit("operator runs are capped at N <= " +
                        std::to_string(kMaxOperatorQubits) + " qubits");
  }
  if (site < 0 || site >= n_qubits) throw IndexError("site out of range");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const Eigen::Index mask = Eigen::Index{1} << (n_qubits - 1 - site);
  CMatrix z = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) z(i, i) = (i & mask) ? -1.0 : 1.0;
  return z;
}

DisorderAverage run_operator_haar_ensemble(const OperatorHaarRunConfig& config,
                                           const AverageOptions& options) {
  const CMatrix o0 = config.initial.value_or(pauli_z_operator(config.n_qubits, 0));
  RealizationFn realization = [&](std::size_t, std::uint64_t seed) {
    Rng rng = make_stream(seed, {kStateStream});
    OperatorEvolver evolver = [&rng](CMatrix& o) {
      UnitaryMatrix u = sample_haar_unitary(o.rows(), rng);
      o = (u.matrix().adjoint() * o * u.matrix()).eval();
    };
    return run_operator_complexity(evolver, o0, config.steps);
  };
  return run_disorder_average(realization, options);
}

}  // namespace krylov
