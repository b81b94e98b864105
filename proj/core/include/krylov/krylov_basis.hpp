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
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace krylov {

/// Residual norm (relative to the unit input) below which a trajectory state
/// is treated as lying in the span of the existing basis.
inline constexpr double kDefaultDependenceTolerance = 1e-8;

/// Deviation from unit norm accepted for trajectory vectors.
inline constexpr double kInputNormTolerance = 1e-10;

template <class Scalar>
struct CoefficientRecord {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  std::int64_t time_step = 0;
  /// φ_n = <K_n|ψ> over the basis as it stands after this step.
  Vector coefficients;
  double residual_norm = 0.0;
  /// True when the residual was appended as a new basis vector.
  bool extended = false;
};

/// Ordered orthonormal basis grown one trajectory vector at a time.
///
/// Each incoming vector is projected with modified Gram-Schmidt followed by a
/// second full MGS pass (twice is enough); a residual above the dependence
/// tolerance is normalized and appended. Vectors are stored column-major in a
/// single contiguous buffer.
template <class Scalar>
class KrylovBasis {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using ColumnMap = Eigen::Map<const Vector>;

  /// `expected_size` only pre-reserves storage.
  explicit KrylovBasis(Eigen::Index ambient_dim,
                       double tolerance = kDefaultDependenceTolerance,
                       Eigen::Index expected_size = 0);

  /// Projects `psi` onto the basis and extends it when `psi` leaves the span.
  ///
  /// Throws NormalizationError when |‖psi‖ - 1| > 1e-10, InvalidDimension on
  /// a length mismatch, and NumericalInconsistency if a complete basis still
  /// leaves a residual above tolerance.
  CoefficientRecord<Scalar> extend_and_project(const Vector& psi, std::int64_t time_step = 0);

  Eigen::Index ambient_dim() const noexcept { return dim_; }
  Eigen::Index size() const noexcept { return size_; }
  bool complete() const noexcept { return size_ == dim_; }
  double tolerance() const noexcept { return tolerance_; }

  ColumnMap vector(Eigen::Index n) const;
  /// Max |<K_i|K_j> - δ_ij| over the stored basis. O(size² · dim).
  double orthonormality_defect() const;

 private:
  Scalar* column(Eigen::Index n) { return storage_.data() + n * dim_; }
  const Scalar* column(Eigen::Index n) const { return storage_.data() + n * dim_; }

  Eigen::Index dim_;
  double tolerance_;
  Eigen::Index size_ = 0;
  std::vector<Scalar> storage_;
};

/// C = Σ_n n |φ_n|² with the 0-based basis ordinal n.
template <class Scalar>
double spread_complexity(const CoefficientRecord<Scalar>& record);

double spread_complexity(std::span<const std::complex<double>> coefficients);
double spread_complexity(std::span<const double> coefficients);

extern template class KrylovBasis<double>;
extern template class KrylovBasis<std::complex<double>>;

}  // namespace krylov
