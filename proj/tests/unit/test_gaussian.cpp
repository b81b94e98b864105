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

#include <cmath>

#include <gtest/gtest.h>

#include "krylov/error.hpp"
#include "krylov/gaussian.hpp"

using namespace krylov;
using namespace krylov::gaussian;

namespace {

std::vector<OrthogonalMatrix> identity_blocks(int count) {
  return std::vector<OrthogonalMatrix>(static_cast<std::size_t>(count),
                                       OrthogonalMatrix(RMatrix::Identity(4, 4), true));
}

double max_abs(const RMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Naive triple loop, independent of Eigen's product kernels.
RMatrix naive_product(const RMatrix& a, const RMatrix& b) {
  RMatrix c = RMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

RMatrix random_antisymmetric(int dim, Rng& rng) {
  std::normal_distribution<double> normal;
  RMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  return a - a.transpose();
}

}  // namespace

TEST(ShiftMatrix, TwoSites) {
  const RMatrix g = shift_matrix(2).matrix();
  RMatrix expected = RMatrix::Zero(4, 4);
  expected.block<2, 2>(0, 2).setIdentity();
  expected.block<2, 2>(2, 0).setIdentity();
  EXPECT_EQ(g, expected);
}

TEST(ShiftMatrix, IsAPermutationOfPeriodN) {
  for (int n : {2, 4, 6, 10}) {
    const RMatrix g = shift_matrix(n).matrix();
    EXPECT_EQ(g.transpose() * g, RMatrix::Identity(2 * n, 2 * n));
    for (Eigen::Index r = 0; r < g.rows(); ++r) EXPECT_EQ(g.row(r).sum(), 1.0);
    RMatrix power = RMatrix::Identity(2 * n, 2 * n);
    for (int k = 1; k <= n; ++k) {
      power = g * power;
      if (k < n) {
        EXPECT_NE(power, RMatrix::Identity(2 * n, 2 * n));
      }
    }
    EXPECT_EQ(power, RMatrix::Identity(2 * n, 2 * n));
  }
}

TEST(ShiftMatrix, FirstRowEndsInLastBlock) {
  const RMatrix g = shift_matrix(4).matrix();
  EXPECT_EQ(g(0, 6), 1.0);
  EXPECT_EQ(g(1, 7), 1.0);
  EXPECT_EQ(g(2, 0), 1.0);
}

TEST(ShiftMatrix, RejectsOddOrTinySizes) {
  EXPECT_THROW(shift_matrix(3), InvalidParameter);
  EXPECT_THROW(shift_matrix(0), InvalidParameter);
}

TEST(BuildFloquet, IdentityBlocksGiveIdentity) {
  const auto f = build_floquet_orthogonal(identity_blocks(3), identity_blocks(3), 6);
  EXPECT_LT(max_abs(f.matrix - RMatrix::Identity(12, 12)), 1e-15);
  EXPECT_TRUE(f.homogeneous);
}

TEST(BuildFloquet, BlockCountMismatchThrows) {
  EXPECT_THROW(build_floquet_orthogonal(identity_blocks(2), identity_blocks(3), 6), LayerError);
}

TEST(BuildFloquet, MatchesExplicitComposition) {
  Rng rng(1);
  std::vector<OrthogonalMatrix> p, q;
  for (int i = 0; i < 2; ++i) p.push_back(sample_special_orthogonal(4, rng));
  for (int i = 0; i < 2; ++i) q.push_back(sample_special_orthogonal(4, rng));
  const auto f = build_floquet_orthogonal(p, q, 4);
  RMatrix ps = RMatrix::Zero(8, 8), qs = RMatrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i) {
    ps.block(4 * i, 4 * i, 4, 4) = p[i].matrix();
    qs.block(4 * i, 4 * i, 4, 4) = q[i].matrix();
  }
  // G moves coordinates one site forward: Q then couples sites (2i, 2i+1) in
  // 1-based labels, i.e. the complementary pairs including the wrap.
  RMatrix g = RMatrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i) g.block(2 * i, 2 * ((i + 3) % 4), 2, 2).setIdentity();
  const RMatrix expected =
      naive_product(naive_product(naive_product(g, qs), g.transpose()), ps);
  EXPECT_LT(max_abs(f.matrix - expected), 1e-14);
  EXPECT_LT(orthogonality_defect(f.matrix), 1e-12);
  EXPECT_FALSE(f.homogeneous);
}

TEST(BuildFloquet, PLayerCouplesSitePairs) {
  Rng rng(2);
  const auto f = sample_floquet_orthogonal(6, false, GateEnsemble::so4(), rng);
  RMatrix p_only =
      build_floquet_orthogonal(
          {sample_special_orthogonal(4, rng), sample_special_orthogonal(4, rng),
           sample_special_orthogonal(4, rng)},
          identity_blocks(3), 6)
          .matrix;
  // Coordinates of site 0 mix only with site 1 under the P layer alone.
  EXPECT_LT(p_only.block(0, 4, 4, 8).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(orthogonality_defect(f.matrix), 1e-12);
}

TEST(BuildFloquet, HomogeneousCommutesWithTwoSiteTranslation) {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = sample_floquet_orthogonal(6, true, GateEnsemble::so4(), rng);
    EXPECT_TRUE(f.homogeneous);
    const RMatrix g = shift_matrix(6).matrix();
    const RMatrix g2 = g * g;
    EXPECT_LT(max_abs(f.matrix * g2 - g2 * f.matrix), 1e-10);
  }
  const auto inhomogeneous = sample_floquet_orthogonal(6, false, GateEnsemble::so4(), rng);
  const RMatrix g2 = shift_matrix(6).matrix() * shift_matrix(6).matrix();
  EXPECT_GT(max_abs(inhomogeneous.matrix * g2 - g2 * inhomogeneous.matrix), 1e-3);
}

TEST(BuildFloquet, FourSitesRandomBlocksAreOrthogonal) {
  Rng rng(4);
  for (auto ens : {GateEnsemble::so4(), GateEnsemble::o4()}) {
    const auto f = sample_floquet_orthogonal(4, false, ens, rng);
    EXPECT_LT(orthogonality_defect(f.matrix), 1e-12);
  }
  EXPECT_THROW(sample_floquet_orthogonal(4, false, GateEnsemble::haar_u4(), rng),
               InvalidParameter);
}

TEST(FloquetPower, StaysOrthogonalForTenThousandSteps) {
  Rng rng(5);
  const auto f = sample_floquet_orthogonal(10, false, GateEnsemble::so4(), rng);
  const RMatrix p = floquet_power(f.matrix, 10000);
  EXPECT_LT(orthogonality_defect(p), 1e-8);
  const RMatrix small = floquet_power(f.matrix, 3);
  EXPECT_LT(max_abs(small - f.matrix * f.matrix * f.matrix), 1e-13);
  EXPECT_EQ(floquet_power(f.matrix, 0), RMatrix::Identity(20, 20));
}

TEST(Covariance, ProductStateIsPure) {
  const auto omega = CovarianceMatrix::product_state(4);
  EXPECT_EQ(omega.purity_defect(), 0.0);
  EXPECT_EQ(omega.matrix()(0, 1), 1.0);
  EXPECT_EQ(omega.matrix()(1, 0), -1.0);
  EXPECT_THROW(CovarianceMatrix(RMatrix::Identity(4, 4)), InvalidParameter);
  EXPECT_THROW(CovarianceMatrix(RMatrix::Zero(3, 3)), InvalidDimension);
}

TEST(Covariance, EvolutionPreservesPurityAndAntisymmetry) {
  Rng rng(6);
  const auto f = sample_floquet_orthogonal(8, false, GateEnsemble::so4(), rng);
  CovarianceMatrix omega = CovarianceMatrix::product_state(8);
  for (int t = 0; t < 200; ++t) omega = evolve_covariance(omega, f.matrix);
  EXPECT_LT(omega.purity_defect(), 1e-8);
  EXPECT_LT(max_abs(omega.matrix() + omega.matrix().transpose()), 1e-12);
}

TEST(Covariance, IdentityEvolutionAndDenseOracle) {
  Rng rng(7);
  const CovarianceMatrix omega(random_antisymmetric(6, rng));
  EXPECT_EQ(evolve_covariance(omega, RMatrix::Identity(6, 6)).matrix(), omega.matrix());
  const RMatrix o = sample_orthogonal(6, rng).matrix();
  const RMatrix expected = naive_product(naive_product(o, omega.matrix()), o.transpose());
  EXPECT_LT(max_abs(evolve_covariance(omega, o).matrix() - expected), 1e-13);
}

TEST(GaussianComplexity, IdentityGivesZero) {
  FloquetOrthogonal f{4, RMatrix::Identity(8, 8), true};
  const auto s = run_gaussian_complexity(f, RVector::Unit(8, 0), 20);
  for (double c : s.values) EXPECT_EQ(c, 0.0);
  const auto cov = run_gaussian_complexity(f, RVector::Unit(8, 0), 20, Mode::CovarianceHS);
  for (double c : cov.values) EXPECT_EQ(c, 0.0);
}

TEST(GaussianComplexity, KrylovDimensionBoundedByTwoN) {
  Rng rng(8);
  const auto f = sample_floquet_orthogonal(10, false, GateEnsemble::so4(), rng);
  const auto s = run_gaussian_complexity(f, RVector::Unit(20, 0), 100);
  EXPECT_LE(s.krylov_dim.back(), 20u);
  for (std::size_t t = 0; t < s.values.size(); ++t) {
    EXPECT_LE(s.values[t], static_cast<double>(s.krylov_dim[t]) - 1.0 + 1e-12);
  }
}

TEST(GaussianComplexity, SingleParticleNormIsConserved) {
  Rng rng(9);
  const auto f = sample_floquet_orthogonal(20, true, GateEnsemble::so4(), rng);
  RVector v = RVector::Unit(40, 0);
  for (int t = 0; t < 1000; ++t) {
    v = f.matrix * v;
    ASSERT_NEAR(v.norm(), 1.0, 1e-10);
  }
}

TEST(GaussianComplexity, RejectsBadInitialVector) {
  FloquetOrthogonal f{2, RMatrix::Identity(4, 4), true};
  EXPECT_THROW(run_gaussian_complexity(f, RVector::Ones(4), 3), NormalizationError);
  EXPECT_THROW(run_gaussian_complexity(f, RVector::Unit(6, 0), 3), InvalidDimension);
}

TEST(GaussianComplexity, EnsembleIsReproducible) {
  GaussianRunConfig config;
  config.n_sites = 12;
  config.steps = 50;
  AverageOptions options;
  options.samples = 8;
  options.master_seed = 9;
  const auto a = run_gaussian_ensemble(config, options);
  options.workers = 3;
  const auto b = run_gaussian_ensemble(config, options);
  EXPECT_EQ(a.series.mean, b.series.mean);
}

TEST(GaussianComplexity, ModeNames) {
  EXPECT_EQ(parse_mode("single_particle"), Mode::SingleParticle);
  EXPECT_EQ(parse_mode("covariance_hs"), Mode::CovarianceHS);
  EXPECT_FALSE(parse_mode("other").has_value());
  EXPECT_EQ(to_string(Mode::CovarianceHS), "covariance_hs");
}
