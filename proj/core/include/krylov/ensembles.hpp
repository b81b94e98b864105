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

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "krylov/rng.hpp"

namespace krylov {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kUnitarityTolerance = 1e-12;
inline constexpr double kDeterminantTolerance = 1e-10;

/// Kronecker product a ⊗ b (a acts on the more significant index).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Max-abs entrywise deviation of M†M from the identity.
double unitarity_defect(const CMatrix& m);
/// Max-abs entrywise deviation of MᵀM from the identity.
double orthogonality_defect(const RMatrix& m);

/// A square complex matrix that is unitary to `kUnitarityTolerance`.
class UnitaryMatrix {
 public:
  /// Checks the invariant; throws InvalidParameter if `m` is not unitary.
  explicit UnitaryMatrix(CMatrix m, double tolerance = kUnitarityTolerance);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  struct Unchecked {};
  UnitaryMatrix(CMatrix m, Unchecked) : m_(std::move(m)) {}
  friend UnitaryMatrix sample_haar_unitary(Eigen::Index, Rng&);
  friend UnitaryMatrix sample_mbl_gate(double, Rng&);

  CMatrix m_;
};

/// A real orthogonal matrix; `special()` guarantees det = +1.
class OrthogonalMatrix {
 public:
  OrthogonalMatrix(RMatrix m, bool special, double tolerance = kUnitarityTolerance);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const RMatrix& matrix() const noexcept { return m_; }
  bool special() const noexcept { return special_; }
  double operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  struct Unchecked {};
  OrthogonalMatrix(RMatrix m, bool special, Unchecked)
      : m_(std::move(m)), special_(special) {}
  friend OrthogonalMatrix sample_orthogonal(Eigen::Index, Rng&);
  friend OrthogonalMatrix sample_special_orthogonal(Eigen::Index, Rng&);

  RMatrix m_;
  bool special_ = false;
};

enum class GateKind { HaarU4, HaarU2, SO4, O4, MBL };

std::string_view to_string(GateKind kind) noexcept;
std::optional<GateKind> parse_gate_kind(std::string_view text) noexcept;

/// Distribution of random local gates. `h` is present iff kind is MBL.
class GateEnsemble {
 public:
  static GateEnsemble haar_u4() { return GateEnsemble(GateKind::HaarU4, {}); }
  static GateEnsemble haar_u2() { return GateEnsemble(GateKind::HaarU2, {}); }
  static GateEnsemble so4() { return GateEnsemble(GateKind::SO4, {}); }
  static GateEnsemble o4() { return GateEnsemble(GateKind::O4, {}); }
  /// Throws InvalidParameter for h < 0 or non-finite h.
  static GateEnsemble mbl(double h);

  GateKind kind() const noexcept { return kind_; }
  std::optional<double> h() const noexcept { return h_; }
  /// Local dimension the gates act on: 2 for HaarU2, 4 otherwise.
  Eigen::Index gate_dim() const noexcept { return kind_ == GateKind::HaarU2 ? 2 : 4; }
  bool is_real() const noexcept { return kind_ == GateKind::SO4 || kind_ == GateKind::O4; }

  friend bool operator==(const GateEnsemble&, const GateEnsemble&) = default;

 private:
  GateEnsemble(GateKind kind, std::optional<double> h) : kind_(kind), h_(h) {}
  GateKind kind_;
  std::optional<double> h_;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix, with the
/// phases of R's diagonal absorbed into Q.
UnitaryMatrix sample_haar_unitary(Eigen::Index dim, Rng& rng);

/// Haar-distributed element of O(dim).
OrthogonalMatrix sample_orthogonal(Eigen::Index dim, Rng& rng);

/// Haar-distributed element of SO(dim): an O(dim) draw whose first column is
/// negated when det = -1.
OrthogonalMatrix sample_special_orthogonal(Eigen::Index dim, Rng& rng);

/// Two-qubit gate (u1⊗u2)·exp(i(a XX + b YY + c ZZ))·(u3⊗u4) with Haar u_i
/// and a, b, c uniform on [-h, h].
UnitaryMatrix sample_mbl_gate(double h, Rng& rng);

/// exp(i(a XX + b YY + c ZZ)), evaluated in the magic (Bell) basis where all
/// three generators are diagonal.
CMatrix two_qubit_canonical_gate(double a, double b, double c);

/// Draws one gate of the ensemble as a complex matrix (real ensembles are
/// embedded as real unitaries).
CMatrix sample_gate(const GateEnsemble& ensemble, Rng& rng);

/// Draws one real two-site block; only SO4 and O4 are accepted.
OrthogonalMatrix sample_orthogonal_block(const GateEnsemble& ensemble, Rng& rng);

/// Uniformly random pure state of dimension `dim` (a Gaussian vector,
/// normalized). Equal in law to the first column of a Haar unitary.
CVector sample_haar_state(Eigen::Index dim, Rng& rng);

}  // namespace krylov
