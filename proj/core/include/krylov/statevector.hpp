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
#include <string_view>
#include <optional>
#include <utility>
#include <vector>

#include "krylov/ensembles.hpp"

namespace krylov {

// Qubit q is the q-th tensor factor from the left, i.e. bit (N-1-q) of the
// computational-basis index.

inline constexpr int kMaxStateQubits = 12;
inline constexpr double kNormTolerance = 1e-10;

enum class Boundary { Open, Periodic };
enum class Parity { Even, Odd };

std::string_view to_string(Boundary b) noexcept;
std::optional<Boundary> parse_boundary(std::string_view text) noexcept;

/// Unit-norm amplitude vector over the 2^N computational basis states.
class QuantumState {
 public:
  /// Computational basis state |index>.
  static QuantumState basis_state(int n_qubits, std::uint64_t index);
  /// |0101...>: qubit q is in |q mod 2>.
  static QuantumState alternating(int n_qubits);
  /// Takes ownership of `amplitudes`; throws NormalizationError unless the
  /// vector has unit norm within kNormTolerance.
  static QuantumState from_amplitudes(int n_qubits, CVector amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }
  const CVector& amplitudes() const noexcept { return amps_; }
  /// Mutable access for evolution kernels; callers keep the norm invariant.
  CVector& mutable_amplitudes() noexcept { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  QuantumState(int n, CVector a) : n_qubits_(n), amps_(std::move(a)) {}
  int n_qubits_ = 0;
  CVector amps_;
};

/// Throws ResourceLimit when the dense statevector for `n_qubits` is beyond
/// the supported size, InvalidDimension for n_qubits < 1.
void check_state_qubits(int n_qubits);

/// Qubit pair (x, x+1) addressed by link x, wrapping to (N-1, 0) under
/// periodic boundaries. Throws IndexError for links that do not exist.
std::pair<int, int> link_qubits(int link, int n_qubits, Boundary boundary);

/// Links belonging to one brickwork layer. Even layers couple (0,1),(2,3),...;
/// odd layers couple (1,2),(3,4),... plus (N-1,0) for periodic even N.
std::vector<int> layer_links(Parity parity, int n_qubits, Boundary boundary);

struct LinkGate {
  int link = 0;
  Eigen::Matrix4cd gate;
};

struct BrickworkLayer {
  Parity parity = Parity::Even;
  std::vector<LinkGate> gates;
};

struct MeasurementRecord {
  std::int64_t time_step = 0;
  int site = 0;
  bool outcome_plus = true;
  double born_probability = 1.0;
};

/// Applies a 4x4 gate to the qubit pair addressed by `link`. The gate's local
/// index is 2·b(first) + b(second). Norm is preserved to rounding.
void apply_two_qubit_gate(QuantumState& state, const Eigen::Matrix4cd& gate, int link,
                          Boundary boundary = Boundary::Open);

/// Validates parity, link range, and disjointness; throws LayerError.
void validate_layer(const BrickworkLayer& layer, int n_qubits, Boundary boundary);

void apply_layer(QuantumState& state, const BrickworkLayer& layer,
                 Boundary boundary = Boundary::Open);

/// U = U_odd · U_even: even layer first, then odd.
void brickwork_step(QuantumState& state, const BrickworkLayer& odd_layer,
                    const BrickworkLayer& even_layer, Boundary boundary = Boundary::Open);

/// Projective Z measurement of one qubit. "+" is the Z = +1 outcome (|0>).
/// An outcome with probability below 1e-14 is never selected.
MeasurementRecord measure_site(QuantumState& state, int site, Rng& rng,
                               std::int64_t time_step = 0);

enum class MeasurementSchedule {
  /// A Bernoulli(p) pass after the even half-layer and another after the odd.
  PerHalfLayer,
  /// A single pass at the end of the full step.
  PerStep,
};

/// Brickwork step punctured by independent per-site measurements at rate p.
std::vector<MeasurementRecord> monitored_step(
    QuantumState& state, const BrickworkLayer& odd_layer, const BrickworkLayer& even_layer,
    double p, Rng& rng, Boundary boundary = Boundary::Open,
    MeasurementSchedule schedule = MeasurementSchedule::PerHalfLayer,
    std::int64_t time_step = 0);

/// One layer of fresh gates drawn from `ensemble` on every link of `parity`.
BrickworkLayer sample_layer(Parity parity, int n_qubits, Boundary boundary,
                            const GateEnsemble& ensemble, Rng& rng);

}  // namespace krylov
