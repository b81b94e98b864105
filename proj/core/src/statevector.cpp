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

#include "krylov/statevector.hpp"

#include <cmath>
#include <string>

#include "krylov/error.hpp"

namespace krylov {

namespace {

constexpr double kNegligibleOutcome = 1e-14;

std::uint64_t qubit_mask(int qubit, int n_qubits) {
  return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

void check_site(int site, int n_qubits) {
  if (site < 0 || site >= n_qubits) {
    throw IndexError("site " + std::to_string(site) + " out of range for " +
                     std::to_string(n_qubits) + " qubits");
  }
}

void measurement_pass(QuantumState& state, double p, Rng& rng, std::int64_t time_step,
                      std::vector<MeasurementRecord>& records) {
  if (p <= 0.0) return;
  std::bernoulli_distribution selected(p);
  for (int site = 0; site < state.n_qubits(); ++site) {
    if (selected(rng)) records.push_back(measure_site(state, site, rng, time_step));
  }
}

}  // namespace

std::string_view to_string(Boundary b) noexcept {
  return b == Boundary::Open ? "open" : "periodic";
}

std::optional<Boundary> parse_boundary(std::string_view text) noexcept {
  if (text == "open") return Boundary::Open;
  if (text == "periodic") return Boundary::Periodic;
  return std::nullopt;
}

void check_state_qubits(int n_qubits) {
  if (n_qubits < 1) {
    throw InvalidDimension("number of qubits must be >= 1, got " + std::to_string(n_qubits));
  }
  if (n_qubits > kMaxStateQubits) {
    throw ResourceLimit("statevector runs are capped at N <= " +
                        std::to_string(kMaxStateQubits) + " qubits, got " +
                        std::to_string(n_qubits));
  }
}

QuantumState QuantumState::basis_state(int n_qubits, std::uint64_t index) {
  check_state_qubits(n_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (index >= dim) throw IndexError("basis index out of range");
  CVector a = CVector::Zero(static_cast<Eigen::Index>(dim));
  a(static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(n_qubits, std::move(a));
}

QuantumState QuantumState::alternating(int n_qubits) {
  check_state_qubits(n_qubits);
  std::uint64_t index = 0;
  for (int q = 0; q < n_qubits; ++q) {
    if (q % 2 == 1) index |= qubit_mask(q, n_qubits);
  }
  return basis_state(n_qubits, index);
}

QuantumState QuantumState::from_amplitudes(int n_qubits, CVector amplitudes) {
  check_state_qubits(n_qubits);
  if (amplitudes.size() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidDimension("amplitude vector length must be 2^N");
  }
  if (std::abs(amplitudes.norm() - 1.0) > kNormTolerance) {
    throw NormalizationError("state amplitudes are not unit norm");
  }
  return QuantumState(n_qubits, std::move(amplitudes));
}

std::pair<int, int> link_qubits(int link, int n_qubits, Boundary boundary) {
  if (link >= 0 && link + 1 < n_qubits) return {link, link + 1};
  if (boundary == Boundary::Periodic && link == n_qubits - 1 && n_qubits >= 2) {
    return {n_qubits - 1, 0};
  }
  throw IndexError("link " + std::to_string(link) + " does not exist for " +
                   std::to_string(n_qubits) + " qubits (" +
                   std::string(to_string(boundary)) + " boundary)");
}

std::vector<int> layer_links(Parity parity, int n_qubits, Boundary boundary) {
  if (boundary == Boundary::Periodic && n_qubits % 2 != 0) {
    throw InvalidParameter("periodic brickwork requires an even number of qubits");
  }
  std::vector<int> links;
  const int first = parity == Parity::Even ? 0 : 1;
  for (int x = first; x + 1 < n_qubits; x += 2) links.push_back(x);
  if (boundary == Boundary::Periodic && parity == Parity::Odd && n_qubits > 2) {
    links.push_back(n_qubits - 1);
  }
  return links;
}

void apply_two_qubit_gate(QuantumState& state, const Eigen::Matrix4cd& gate, int link,
                          Boundary boundary) {
  const int n = state.n_qubits();
  auto [qa, qb] = link_qubits(link, n, boundary);
  const std::uint64_t ma = qubit_mask(qa, n);
  const std::uint64_t mb = qubit_mask(qb, n);
  const std::uint64_t both = ma | mb;
  const std::uint64_t dim = static_cast<std::uint64_t>(state.dim());
  Complex* a = state.mutable_amplitudes().data();

  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & both) continue;
    const std::uint64_t idx[4] = {i, i | mb, i | ma, i | both};
    const Complex v0 = a[idx[0]], v1 = a[idx[1]], v2 = a[idx[2]], v3 = a[idx[3]];
    for (int r = 0; r < 4; ++r) {
      a[idx[r]] = gate(r, 0) * v0 + gate(r, 1) * v1 + gate(r, 2) * v2 + gate(r, 3) * v3;
    }
  }
}

void validate_layer(const BrickworkLayer& layer, int n_qubits, Boundary boundary) {
  std::vector<bool> used(static_cast<std::size_t>(n_qubits), false);
  const int want = layer.parity == Parity::Even ? 0 : 1;
  for (const LinkGate& g : layer.gates) {
    if (g.link < 0 || g.link % 2 != want) {
      throw LayerError("link " + std::to_string(g.link) + " has the wrong parity for this layer");
    }
    std::pair<int, int> qs;
    try {
      qs = link_qubits(g.link, n_qubits, boundary);
    } catch (const IndexError& e) {
      throw LayerError(e.what());
    }
    for (int q : {qs.first, qs.second}) {
      if (used[static_cast<std::size_t>(q)]) {
        throw LayerError("links within a layer must be disjoint");
      }
      used[static_cast<std::size_t>(q)] = true;
    }
  }
}

void apply_layer(QuantumState& state, const BrickworkLayer& layer, Boundary boundary) {
  for (const LinkGate& g : layer.gates) apply_two_qubit_gate(state, g.gate, g.link, boundary);
}

void brickwork_step(QuantumState& state, const BrickworkLayer& odd_layer,
                    const BrickworkLayer& even_layer, Boundary boundary) {
  if (odd_layer.parity != Parity::Odd || even_layer.parity != Parity::Even) {
    throw LayerError("brickwork_step expects (odd, even) layers");
  }
  validate_layer(even_layer, state.n_qubits(), boundary);
  validate_layer(odd_layer, state.n_qubits(), boundary);
  apply_layer(state, even_layer, boundary);
  apply_layer(state, odd_layer, boundary);
}

MeasurementRecord measure_site(QuantumState& state, int site, Rng& rng,
                               std::int64_t time_step) {
  const int n = state.n_qubits();
  check_site(site, n);
  const std::uint64_t m = qubit_mask(site, n);
  CVector& a = state.mutable_amplitudes();
  const std::uint64_t dim = static_cast<std::uint64_t>(a.size());

  double p_plus = 0.0;
  double p_minus = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    double w = std::norm(a(static_cast<Eigen::Index>(i)));
    if (i & m) p_minus += w; else p_plus += w;
  }
  const double total = p_plus + p_minus;
  p_plus /= total;
  p_minus /= total;

  bool plus;
  if (p_plus < kNegligibleOutcome) {
    plus = false;
  } else if (p_minus < kNegligibleOutcome) {
    plus = true;
  } else {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    plus = u(rng) < p_plus;
  }
  const double prob = plus ? p_plus : p_minus;
  const double scale = 1.0 / std::sqrt(prob * total);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const bool is_plus = (i & m) == 0;
    auto& v = a(static_cast<Eigen::Index>(i));
    v = is_plus == plus ? v * scale : Complex(0.0, 0.0);
  }
  return MeasurementRecord{time_step, site, plus, prob};
}

std::vector<MeasurementRecord> monitored_step(QuantumState& state,
                                              const BrickworkLayer& odd_layer,
                                              const BrickworkLayer& even_layer, double p,
                                              Rng& rng, Boundary boundary,
                                              MeasurementSchedule schedule,
                                              std::int64_t time_step) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter("measurement rate p must lie in [0, 1]");
  }
  if (odd_layer.parity != Parity::Odd || even_layer.parity != Parity::Even) {
    throw LayerError("monitored_step expects (odd, even) layers");
  }
  validate_layer(even_layer, state.n_qubits(), boundary);
  validate_layer(odd_layer, state.n_qubits(), boundary);

  std::vector<MeasurementRecord> records;
  apply_layer(state, even_layer, boundary);
  if (schedule == MeasurementSchedule::PerHalfLayer) {
    measurement_pass(state, p, rng, time_step, records);
  }
  apply_layer(state, odd_layer, boundary);
  measurement_pass(state, p, rng, time_step, records);
  return records;
}

BrickworkLayer sample_layer(Parity parity, int n_qubits, Boundary boundary,
                            const GateEnsemble& ensemble, Rng& rng) {
  if (ensemble.gate_dim() != 4) {
    throw InvalidParameter("brickwork layers need two-qubit gate ensembles");
  }
  BrickworkLayer layer{parity, {}};
  for (int link : layer_links(parity, n_qubits, boundary)) {
    layer.gates.push_back(LinkGate{link, sample_gate(ensemble, rng)});
  }
  return layer;
}

}  // namespace krylov
