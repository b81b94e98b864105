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

#include "krylov/krylov_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krylov/error.hpp"

namespace krylov {

namespace {

// Smallest squared residual that the Pythagorean estimate can resolve once
// the basis is complete.
constexpr double kCompleteResidualSq = 1e-12;

template <class Scalar>
double abs2(const Scalar& x) {
  return std::norm(x);
}

}  // namespace

template <class Scalar>
KrylovBasis<Scalar>::KrylovBasis(Eigen::Index ambient_dim, double tolerance,
                                 Eigen::Index expected_size)
    : dim_(ambient_dim), tolerance_(tolerance) {
  if (ambient_dim < 1) throw InvalidDimension("Krylov ambient dimension must be >= 1");
  if (!(tolerance > 0.0)) throw InvalidParameter("dependence tolerance must be positive");
  if (expected_size > 0) {
    storage_.reserve(static_cast<std::size_t>(std::min(expected_size, ambient_dim) * dim_));
  }
}

template <class Scalar>
typename KrylovBasis<Scalar>::ColumnMap KrylovBasis<Scalar>::vector(Eigen::Index n) const {
  if (n < 0 || n >= size_) throw IndexError("Krylov vector index out of range");
  return ColumnMap(column(n), dim_);
}

template <class Scalar>
double KrylovBasis<Scalar>::orthonormality_defect() const {
  if (size_ == 0) return 0.0;
  Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> k(storage_.data(),
                                                                            dim_, size_);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g = k.adjoint() * k;
  g.diagonal().array() -= Scalar(1);
  return g.cwiseAbs().maxCoeff();
}

template <class Scalar>
CoefficientRecord<Scalar> KrylovBasis<Scalar>::extend_and_project(const Vector& psi,
                                                                  std::int64_t time_step) {
  if (psi.size() != dim_) {
    throw InvalidDimension("trajectory vector has length " + std::to_string(psi.size()) +
                           ", basis ambient dimension is " + std::to_string(dim_));
  }
  const double norm = psi.norm();
  if (!(std::abs(norm - 1.0) <= kInputNormTolerance)) {
    throw NormalizationError("trajectory vector is not unit norm (|psi| = " +
                             std::to_string(norm) + ")");
  }

  CoefficientRecord<Scalar> record;
  record.time_step = time_step;

  if (complete()) {
    // Nothing can be appended; a single projection gives the coefficients and
    // the Pythagorean defect bounds the residual.
    Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> k(storage_.data(),
                                                                              dim_, size_);
    record.coefficients.noalias() = k.adjoint() * psi;
    const double defect = norm * norm - record.coefficients.squaredNorm();
    record.residual_norm = std::sqrt(std::max(0.0, defect));
    if (defect > std::max(kCompleteResidualSq, tolerance_ * tolerance_)) {
      throw NumericalInconsistency("complete Krylov basis leaves residual " +
                                   std::to_string(record.residual_norm));
    }
    return record;
  }

  Vector r = psi;
  record.coefficients = Vector::Zero(size_);
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index n = 0; n < size_; ++n) {
      ColumnMap k(column(n), dim_);
      const Scalar c = k.dot(r);
      r.noalias() -= c * k;
      record.coefficients(n) += c;
    }
  }
  const double residual = r.norm();
  record.residual_norm = residual;
  if (residual > tolerance_) {
    storage_.resize(static_cast<std::size_t>((size_ + 1) * dim_));
    Eigen::Map<Vector>(column(size_), dim_) = r / residual;
    ++size_;
    record.coefficients.conservativeResize(size_);
    record.coefficients(size_ - 1) = Scalar(residual);
    record.extended = true;
  }
  return record;
}

template <class Scalar>
double spread_complexity(const CoefficientRecord<Scalar>& record) {
  double c = 0.0;
  for (Eigen::Index n = 1; n < record.coefficients.size(); ++n) {
    c += static_cast<double>(n) * abs2(record.coefficients(n));
  }
  return c;
}

double spread_complexity(std::span<const std::complex<double>> coefficients) {
  double c = 0.0;
  for (std::size_t n = 1; n < coefficients.size(); ++n) {
    c += static_cast<double>(n) * std::norm(coefficients[n]);
  }
  return c;
}

double spread_complexity(std::span<const double> coefficients) {
  double c = 0.0;
  for (std::size_t n = 1; n < coefficients.size(); ++n) {
    c += static_cast<double>(n) * coefficients[n] * coefficients[n];
  }
  return c;
}

template class KrylovBasis<double>;
template class KrylovBasis<std::complex<double>>;
template double spread_complexity(const CoefficientRecord<double>&);
template double spread_complexity(const CoefficientRecord<std::complex<double>>&);

}  // namespace krylov
