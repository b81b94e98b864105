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

#include "krylov/gaussian.hpp"

#include <cmath>
#include <string>

#include "krylov/error.hpp"

namespace krylov::gaussian {

namespace {

constexpr double kAntisymmetryTolerance = 1e-10;
constexpr double kReorthogonalizeAbove = 1e-9;

void check_sites(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw InvalidParameter("Gaussian circuits need an even number of sites >= 2, got " +
                           std::to_string(n_sites));
  }
}

RMatrix direct_sum(const std::vector<OrthogonalMatrix>& blocks, Eigen::Index dim) {
  RMatrix out = RMatrix::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    out.block(offset, offset, 4, 4) = b.matrix();
    offset += 4;
  }
  return out;
}

RMatrix reorthogonalize(const RMatrix& m) {
  Eigen::HouseholderQR<RMatrix> qr(m);
  RMatrix q = qr.householderQ();
  const RMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::SingleParticle ? "single_particle" : "covariance_hs";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  if (text == "single_particle") return Mode::SingleParticle;
  if (text == "covariance_hs") return Mode::CovarianceHS;
  return std::nullopt;
}

CovarianceMatrix::CovarianceMatrix(RMatrix omega) : omega_(std::move(omega)) {
  if (omega_.rows() != omega_.cols() || omega_.rows() % 2 != 0 || omega_.rows() == 0) {
    throw InvalidDimension("covariance matrix must be square with even dimension");
  }
  const double asym = (omega_ + omega_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kAntisymmetryTolerance) {
    throw InvalidParameter("covariance matrix is not antisymmetric");
  }
}

CovarianceMatrix CovarianceMatrix::product_state(int n_sites) {
  if (n_sites < 1) throw InvalidParameter("need at least one fermionic pair");
  RMatrix omega = RMatrix::Zero(2 * n_sites, 2 * n_sites);
  for (int i = 0; i < n_sites; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return CovarianceMatrix(std::move(omega));
}

double CovarianceMatrix::purity_defect() const {
  RMatrix g = omega_.transpose() * omega_;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

OrthogonalMatrix shift_matrix(int n_sites) {
  check_sites(n_sites);
  const Eigen::Index dim = 2 * n_sites;
  RMatrix g = RMatrix::Zero(dim, dim);
  for (int i = 0; i < n_sites; ++i) {
    const int j = (i - 1 + n_sites) % n_sites;
    g.block<2, 2>(2 * i, 2 * j).setIdentity();
  }
  return OrthogonalMatrix(std::move(g), false);
}

FloquetOrthogonal build_floquet_orthogonal(const std::vector<OrthogonalMatrix>& p_blocks,
                                           const std::vector<OrthogonalMatrix>& q_blocks,
                                           int n_sites) {
  check_sites(n_sites);
  const std::size_t want = static_cast<std::size_t>(n_sites / 2);
  if (p_blocks.size() != want || q_blocks.size() != want) {
    throw LayerError("expected " + std::to_string(want) + " P and Q blocks, got " +
                     std::to_string(p_blocks.size()) + " and " +
                     std::to_string(q_blocks.size()));
  }
  for (const auto* list : {&p_blocks, &q_blocks}) {
    for (const auto& b : *list) {
      if (b.dim() != 4) throw LayerError("two-site blocks must be 4x4");
    }
  }
  const Eigen::Index dim = 2 * n_sites;
  const RMatrix g = shift_matrix(n_sites).matrix();
  const RMatrix p = direct_sum(p_blocks, dim);
  const RMatrix q = direct_sum(q_blocks, dim);

  FloquetOrthogonal out;
  out.n_sites = n_sites;
  out.matrix = g * q * g.transpose() * p;
  out.homogeneous = true;
  for (std::size_t i = 1; i < want; ++i) {
    if (p_blocks[i].matrix() != p_blocks[0].matrix() ||
        q_blocks[i].matrix() != q_blocks[0].matrix()) {
      out.homogeneous = false;
      break;
    }
  }
  return out;
}

FloquetOrthogonal sample_floquet_orthogonal(int n_sites, bool homogeneous,
                                            const GateEnsemble& ensemble, Rng& rng) {
  check_sites(n_sites);
  const std::size_t blocks = static_cast<std::size_t>(n_sites / 2);
  std::vector<OrthogonalMatrix> p, q;
  p.reserve(blocks);
  q.reserve(blocks);
  if (homogeneous) {
    OrthogonalMatrix p0 = sample_orthogonal_block(ensemble, rng);
    OrthogonalMatrix q0 = sample_orthogonal_block(ensemble, rng);
    p.assign(blocks, p0);
    q.assign(blocks, q0);
  } else {
    for (std::size_t i = 0; i < blocks; ++i) p.push_back(sample_orthogonal_block(ensemble, rng));
    for (std::size_t i = 0; i < blocks; ++i) q.push_back(sample_orthogonal_block(ensemble, rng));
  }
  return build_floquet_orthogonal(p, q, n_sites);
}

CovarianceMatrix evolve_covariance(const CovarianceMatrix& omega, const RMatrix& o) {
  if (o.rows() != omega.matrix().rows() || o.cols() != o.rows()) {
    throw InvalidDimension("Floquet operator and covariance matrix sizes differ");
  }
  RMatrix next = o * omega.matrix() * o.transpose();
  // Restore exact antisymmetry lost to rounding.
  next = 0.5 * (next - next.transpose()).eval();
  return CovarianceMatrix(std::move(next));
}

RMatrix floquet_power(const RMatrix& o, std::size_t t) {
  RMatrix acc = RMatrix::Identity(o.rows(), o.cols());
  for (std::size_t k = 0; k < t; ++k) {
    acc = (o * acc).eval();
    if (orthogonality_defect(acc) > kReorthogonalizeAbove) acc = reorthogonalize(acc);
  }
  return acc;
}

ComplexitySeries run_gaussian_complexity(const FloquetOrthogonal& floquet, const RVector& v0,
                                         std::size_t steps, Mode mode, double tolerance) {
  const Eigen::Index dim = floquet.matrix.rows();
  if (v0.size() != dim) throw InvalidDimension("initial vector must have length 2N");
  if (std::abs(v0.norm() - 1.0) > kInputNormTolerance) {
    throw NormalizationError("initial single-particle vector must be unit norm");
  }
  if (mode == Mode::CovarianceHS) {
    return run_covariance_complexity(floquet, CovarianceMatrix::product_state(floquet.n_sites),
                                     steps, tolerance);
  }
  const RMatrix& o = floquet.matrix;
  VectorStep<double> step = [&o](RVector& v) {
    RVector next = o * v;
    v = next / next.norm();
  };
  return run_vector_complexity<double>(step, v0, steps, tolerance);
}

ComplexitySeries run_covariance_complexity(const FloquetOrthogonal& floquet,
                                           const CovarianceMatrix& omega0, std::size_t steps,
                                           double tolerance) {
  const Eigen::Index dim = floquet.matrix.rows();
  if (omega0.matrix().rows() != dim) {
    throw InvalidDimension("covariance matrix must be 2N x 2N");
  }
  // ⟨A,B⟩ = Tr(AᵀB)/(2N) is the Euclidean product of vec(A)/√(2N).
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  RMatrix omega = omega0.matrix();
  auto vectorize = [&](const RMatrix& m) {
    return RVector(Eigen::Map<const RVector>(m.data(), dim * dim) * scale);
  };
  RVector v0 = vectorize(omega);
  if (std::abs(v0.norm() - 1.0) > kInputNormTolerance) {
    throw NormalizationError("initial covariance matrix must have Tr(ΩᵀΩ)/(2N) = 1");
  }
  const RMatrix& o = floquet.matrix;
  VectorStep<double> step = [&](RVector& v) {
    omega = (o * omega * o.transpose()).eval();
    v = vectorize(omega);
    v /= v.norm();
  };
  return run_vector_complexity<double>(step, std::move(v0), steps, tolerance);
}

DisorderAverage run_gaussian_ensemble(const GaussianRunConfig& config,
                                      const AverageOptions& options) {
  check_sites(config.n_sites);
  const Eigen::Index dim = 2 * config.n_sites;
  RVector v0 = config.initial.value_or(RVector::Unit(dim, 0));
  RealizationFn realization = [&](std::size_t, std::uint64_t seed) {
    Rng rng = make_stream(seed, {kGateStream});
    FloquetOrthogonal o =
        sample_floquet_orthogonal(config.n_sites, config.homogeneous, config.ensemble, rng);
    return run_gaussian_complexity(o, v0, config.steps, config.mode);
  };
  return run_disorder_average(realization, options);
}

}  // namespace krylov::gaussian
