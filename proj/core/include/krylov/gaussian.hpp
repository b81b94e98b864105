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
#include <string_view>
#include <vector>

#include "krylov/complexity.hpp"
#include "krylov/ensembles.hpp"

/// Floquet free-fermion circuits acting on Majorana coordinates
/// ξ = (q_1, p_1, ..., q_N, p_N); site i owns coordinates (2i, 2i+1).
namespace krylov::gaussian {

/// Orthogonal Floquet operator on the 2N Majorana coordinates.
struct FloquetOrthogonal {
  int n_sites = 0;
  RMatrix matrix;
  bool homogeneous = false;
};

/// Real antisymmetric 2N x 2N matrix of Majorana commutator expectations.
class CovarianceMatrix {
 public:
  /// Throws InvalidParameter unless Ωᵀ = -Ω within 1e-10.
  explicit CovarianceMatrix(RMatrix omega);
  /// ⊕_i [[0, 1], [-1, 0]], the pure product state.
  static CovarianceMatrix product_state(int n_sites);

  const RMatrix& matrix() const noexcept { return omega_; }
  int n_sites() const noexcept { return static_cast<int>(omega_.rows() / 2); }
  /// max |ΩᵀΩ - I|; zero for a pure Gaussian state.
  double purity_defect() const;

 private:
  RMatrix omega_;
};

enum class Mode { SingleParticle, CovarianceHS };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

/// Cyclic one-site shift: block-row i holds I₂ in block-column (i-1 mod N).
/// Throws InvalidParameter unless N >= 2 is even.
OrthogonalMatrix shift_matrix(int n_sites);

/// O = G·(⊕Q_i)·Gᵀ·(⊕P_i). P_i acts on sites (2i, 2i+1); conjugation by G
/// moves the Q layer onto the complementary pairs (2i+1, 2i+2 mod N).
/// Throws LayerError unless each list has N/2 four-dimensional blocks.
FloquetOrthogonal build_floquet_orthogonal(const std::vector<OrthogonalMatrix>& p_blocks,
                                           const std::vector<OrthogonalMatrix>& q_blocks,
                                           int n_sites);

/// Draws P and Q blocks from `ensemble` (SO4 or O4). A homogeneous circuit
/// tiles one P and one Q; an inhomogeneous one draws N/2 of each.
FloquetOrthogonal sample_floquet_orthogonal(int n_sites, bool homogeneous,
                                            const GateEnsemble& ensemble, Rng& rng);

/// OΩOᵀ.
CovarianceMatrix evolve_covariance(const CovarianceMatrix& omega, const RMatrix& o);

/// Oᵗ by repeated multiplication, re-orthogonalized by QR whenever the
/// orthogonality defect exceeds 1e-9.
RMatrix floquet_power(const RMatrix& o, std::size_t t);

/// Spread complexity of v(t) = Oᵗ v0 (single-particle mode) or of
/// Ω(t) = Oᵗ Ω(0) (Oᵗ)ᵀ under ⟨A,B⟩ = Tr(AᵀB)/(2N) (covariance mode).
/// Throws NormalizationError unless ‖v0‖ = 1.
ComplexitySeries run_gaussian_complexity(const FloquetOrthogonal& floquet, const RVector& v0,
                                         std::size_t steps, Mode mode = Mode::SingleParticle,
                                         double tolerance = kDefaultDependenceTolerance);

/// Same, starting from an explicit covariance matrix (covariance mode only).
ComplexitySeries run_covariance_complexity(const FloquetOrthogonal& floquet,
                                           const CovarianceMatrix& omega0, std::size_t steps,
                                           double tolerance = kDefaultDependenceTolerance);

struct GaussianRunConfig {
  int n_sites = 100;
  bool homogeneous = false;
  Mode mode = Mode::SingleParticle;
  GateEnsemble ensemble = GateEnsemble::so4();
  std::size_t steps = 512;
  /// Initial single-particle vector; e_0 when empty.
  std::optional<RVector> initial;
};

/// Disorder average over fresh Floquet draws.
DisorderAverage run_gaussian_ensemble(const GaussianRunConfig& config,
                                      const AverageOptions& options);

}  // namespace krylov::gaussian
