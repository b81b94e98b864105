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

#include "krylov/ensembles.hpp"

#include <cmath>
#include <numbers>

#include "krylov/error.hpp"

namespace krylov {

namespace {

void require_dim(Eigen::Index dim) {
  if (dim < 1) {
    throw InvalidDimension("matrix dimension must be >= 1, got " + std::to_string(dim));
  }
}

CMatrix ginibre(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix z(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      double re = normal(rng);
      double im = normal(rng);
      z(r, c) = Complex(re, im);
    }
  }
  return z;
}

// Pauli-diagonal phases in the Bell basis, ordered Φ+, Φ-, Ψ+, Ψ-.
constexpr int kXXSign[4] = {+1, -1, +1, -1};
constexpr int kYYSign[4] = {-1, +1, +1, -1};
constexpr int kZZSign[4] = {+1, +1, -1, -1};

const Eigen::Matrix4cd& bell_basis() {
  static const Eigen::Matrix4cd basis = [] {
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
    // Columns are |Φ+>, |Φ->, |Ψ+>, |Ψ-> in the |00>,|01>,|10>,|11> basis.
    b(0, 0) = s;  b(3, 0) = s;
    b(0, 1) = s;  b(3, 1) = -s;
    b(1, 2) = s;  b(2, 2) = s;
    b(1, 3) = s;  b(2, 3) = -s;
    return b;
  }();
  return basis;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

double unitarity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  CMatrix g = m.adjoint() * m;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

double orthogonality_defect(const RMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  RMatrix g = m.transpose() * m;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(CMatrix m, double tolerance) : m_(std::move(m)) {
  if (m_.rows() < 1) throw InvalidDimension("unitary matrix must be non-empty");
  double defect = unitarity_defect(m_);
  if (!(defect <= tolerance)) {
    throw InvalidParameter("matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
}

OrthogonalMatrix::OrthogonalMatrix(RMatrix m, bool special, double tolerance)
    : m_(std::move(m)), special_(special) {
  if (m_.rows() < 1) throw InvalidDimension("orthogonal matrix must be non-empty");
  double defect = orthogonality_defect(m_);
  if (!(defect <= tolerance)) {
    throw InvalidParameter("matrix is not orthogonal (defect " + std::to_string(defect) + ")");
  }
  if (special_ && std::abs(m_.determinant() - 1.0) > kDeterminantTolerance) {
    throw InvalidParameter("orthogonal matrix marked special has det != +1");
  }
}

std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::HaarU4: return "haar_u4";
    case GateKind::HaarU2: return "haar_u2";
    case GateKind::SO4: return "so4";
    case GateKind::O4: return "o4";
    case GateKind::MBL: return "mbl";
  }
  return "unknown";
}

std::optional<GateKind> parse_gate_kind(std::string_view text) noexcept {
  if (text == "haar_u4" || text == "haar") return GateKind::HaarU4;
  if (text == "haar_u2") return GateKind::HaarU2;
  if (text == "so4") return GateKind::SO4;
  if (text == "o4") return GateKind::O4;
  if (text == "mbl") return GateKind::MBL;
  return std::nullopt;
}

GateEnsemble GateEnsemble::mbl(double h) {
  if (!std::isfinite(h) || h < 0.0) {
    throw InvalidParameter("MBL coupling half-width h must be finite and >= 0");
  }
  return GateEnsemble(GateKind::MBL, h);
}

UnitaryMatrix sample_haar_unitary(Eigen::Index dim, Rng& rng) {
  require_dim(dim);
  CMatrix z = ginibre(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double mag = std::abs(d);
    // Q·diag(r_jj/|r_jj|) makes the factorization unique, hence Haar.
    Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return UnitaryMatrix(std::move(q), UnitaryMatrix::Unchecked{});
}

OrthogonalMatrix sample_orthogonal(Eigen::Index dim, Rng& rng) {
  require_dim(dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  RMatrix z(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) z(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<RMatrix> qr(z);
  RMatrix q = qr.householderQ();
  const RMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return OrthogonalMatrix(std::move(q), false, OrthogonalMatrix::Unchecked{});
}

OrthogonalMatrix sample_special_orthogonal(Eigen::Index dim, Rng& rng) {
  OrthogonalMatrix o = sample_orthogonal(dim, rng);
  RMatrix m = o.matrix();
  if (m.determinant() < 0.0) m.col(0) *= -1.0;
  return OrthogonalMatrix(std::move(m), true, OrthogonalMatrix::Unchecked{});
}

CMatrix two_qubit_canonical_gate(double a, double b, double c) {
  const Eigen::Matrix4cd& bell = bell_basis();
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) {
    double angle = a * kXXSign[k] + b * kYYSign[k] + c * kZZSign[k];
    phases(k) = std::polar(1.0, angle);
  }
  return bell * phases.asDiagonal() * bell.adjoint();
}

UnitaryMatrix sample_mbl_gate(double h, Rng& rng) {
  if (!std::isfinite(h) || h < 0.0) {
    throw InvalidParameter("MBL coupling half-width h must be finite and >= 0");
  }
  UnitaryMatrix u1 = sample_haar_unitary(2, rng);
  UnitaryMatrix u2 = sample_haar_unitary(2, rng);
  UnitaryMatrix u3 = sample_haar_unitary(2, rng);
  UnitaryMatrix u4 = sample_haar_unitary(2, rng);
  std::uniform_real_distribution<double> coupling(-h, h);
  double a = h > 0.0 ? coupling(rng) : 0.0;
  double b = h > 0.0 ? coupling(rng) : 0.0;
  double c = h > 0.0 ? coupling(rng) : 0.0;

  CMatrix left = kron(u1.matrix(), u2.matrix());
  CMatrix right = kron(u3.matrix(), u4.matrix());
  CMatrix gate = left * two_qubit_canonical_gate(a, b, c) * right;
  return UnitaryMatrix(std::move(gate), UnitaryMatrix::Unchecked{});
}

CMatrix sample_gate(const GateEnsemble& ensemble, Rng& rng) {
  switch (ensemble.kind()) {
    case GateKind::HaarU4: return sample_haar_unitary(4, rng).matrix();
    case GateKind::HaarU2: return sample_haar_unitary(2, rng).matrix();
    case GateKind::SO4: return sample_special_orthogonal(4, rng).matrix().cast<Complex>();
    case GateKind::O4: return sample_orthogonal(4, rng).matrix().cast<Complex>();
    case GateKind::MBL: return sample_mbl_gate(*ensemble.h(), rng).matrix();
  }
  throw InvalidParameter("unknown gate ensemble");
}

OrthogonalMatrix sample_orthogonal_block(const GateEnsemble& ensemble, Rng& rng) {
  switch (ensemble.kind()) {
    case GateKind::SO4: return sample_special_orthogonal(4, rng);
    case GateKind::O4: return sample_orthogonal(4, rng);
    default:
      throw InvalidParameter("orthogonal blocks require the so4 or o4 ensemble, got " +
                             std::string(to_string(ensemble.kind())));
  }
}

CVector sample_haar_state(Eigen::Index dim, Rng& rng) {
  require_dim(dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double re = normal(rng);
    double im = normal(rng);
    v(i) = Complex(re, im);
  }
  v /= v.norm();
  return v;
}

}  // namespace krylov
