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

// Published reference values. Several of these are expected to disagree with
// the simulation at finite size; they are kept separate from the unit suites
// so the disagreement stays visible.

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "krylov/analytics.hpp"
#include "krylov/circuits.hpp"
#include "krylov/complexity.hpp"
#include "krylov/ensembles.hpp"
#include "krylov/floquet_spins.hpp"
#include "krylov/gaussian.hpp"
#include "krylov/tools/runner.hpp"
#include "stats.hpp"

using namespace krylov;

namespace {

double published_haar_curve(double t, double dim) { return t - t * (t - 1) / (2 * dim); }

}  // namespace

TEST(Published, PorterThomasFirstColumn) {
  constexpr int kDim = 16;
  Rng rng(20260101);
  std::vector<double> p;
  p.reserve(100000);
  for (int i = 0; i < 100000; ++i) p.push_back(std::norm(sample_haar_unitary(kDim, rng)(0, 0)));
  const auto ks = stats::ks_one_sample(p, [](double x) { return 1.0 - std::exp(-kDim * x); });
  EXPECT_GT(ks.p_value, 0.01) << "D = " << ks.statistic;
}

TEST(Published, HaarOverlapMoments) {
  constexpr int kDim = 64;
  Rng rng(77);
  std::vector<double> overlaps;
  for (int i = 0; i < 10000; ++i) {
    const CVector psi = sample_haar_unitary(kDim, rng).matrix().col(0);
    const CVector phi = sample_haar_unitary(kDim, rng).matrix().col(0);
    overlaps.push_back(std::norm(psi.dot(phi)));
  }
  EXPECT_LT(std::abs(stats::mean(overlaps) - 1.0 / kDim), 5 * stats::standard_error(overlaps));
  EXPECT_NEAR(stats::variance(overlaps) / (1.0 / (kDim * kDim + kDim)), 1.0, 0.1);
}

TEST(Published, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(analytics::expected_complexity_haar(2, 4), 1.75);
  for (std::uint64_t t : {16u, 17u, 100u}) {
    EXPECT_DOUBLE_EQ(analytics::expected_complexity_haar(t, 16), 8.0);
  }
}

TEST(Published, GlobalHaarEarlyTimeCurve) {
  GlobalHaarRunConfig config;
  config.n_qubits = 4;
  config.steps = 15;
  AverageOptions options;
  options.samples = 500;
  options.master_seed = 11;
  const auto avg = run_global_haar_ensemble(config, options);
  for (std::size_t t = 1; t <= 15; ++t) {
    EXPECT_LE(std::abs(avg.series.mean[t] - published_haar_curve(t, 16)),
              3 * avg.series.standard_error[t])
        << "t = " << t << " mean " << avg.series.mean[t];
  }
}

TEST(Published, GlobalHaarSaturation) {
  GlobalHaarRunConfig config;
  config.n_qubits = 8;
  config.steps = 4 * 256;
  AverageOptions options;
  options.samples = 200;
  options.master_seed = 12;
  const auto avg = run_global_haar_ensemble(config, options);
  ASSERT_TRUE(avg.saturation.has_value());
  EXPECT_NEAR(avg.saturation->c_inf, 128.0, 0.03 * 128.0);
  EXPECT_GE(avg.saturation->t_sat, 0.8 * 256) << "t_sat = " << avg.saturation->t_sat;
  EXPECT_LE(avg.saturation->t_sat, 1.2 * 256) << "t_sat = " << avg.saturation->t_sat;
}

TEST(Published, AggregateOfManyHaarRuns) {
  GlobalHaarRunConfig config;
  config.n_qubits = 8;
  config.steps = 128;
  std::vector<ComplexitySeries> runs;
  runs.reserve(2000);
  for (std::uint64_t i = 0; i < 2000; ++i) runs.push_back(run_global_haar_realization(config, i));
  const auto series = analytics::aggregate(runs);
  int violations = 0;
  for (std::size_t t = 1; t <= 128; ++t) {
    if (std::abs(series.mean[t] - published_haar_curve(t, 256)) > 3 * series.standard_error[t]) {
      ++violations;
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(Published, ShiftMatrixTwoSites) {
  RMatrix expected = RMatrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = RMatrix::Identity(2, 2);
  expected.block(2, 0, 2, 2) = RMatrix::Identity(2, 2);
  EXPECT_TRUE(gaussian::shift_matrix(2).matrix() == expected);
}

TEST(Published, AndersonSuppression) {
  AverageOptions options;
  options.samples = 200;
  options.master_seed = 21;
  gaussian::GaussianRunConfig config;
  config.n_sites = 100;
  config.homogeneous = true;
  const double hom = run_gaussian_ensemble(config, options).saturation->c_inf;
  config.homogeneous = false;
  const double inhom100 = run_gaussian_ensemble(config, options).saturation->c_inf;
  config.n_sites = 80;
  const double inhom80 = run_gaussian_ensemble(config, options).saturation->c_inf;
  EXPECT_LT(inhom100, 0.5 * hom);
  EXPECT_LT(std::abs(inhom100 - inhom80) / inhom100, 0.1);
}

TEST(Published, FloquetHaarPeakAndPlateau) {
  spins::FloquetRunConfig config;
  config.n_qubits = 8;
  config.steps = 4 * 256;
  AverageOptions options;
  options.samples = 200;
  options.master_seed = 31;
  const auto avg = spins::run_floquet_complexity(config, options);
  ASSERT_TRUE(avg.saturation.has_value());
  const double peak = *std::max_element(avg.series.mean.begin(), avg.series.mean.end());
  EXPECT_GT(peak, avg.saturation->c_inf + 3 * avg.c_inf_stderr);
  EXPECT_NEAR(avg.saturation->c_inf, 128.0, 0.25 * 128.0);

  config.ensemble = GateEnsemble::mbl(0.05);
  options.master_seed = 32;
  const auto weak = spins::run_floquet_complexity(config, options);
  EXPECT_LT(weak.saturation->c_inf, 0.2 * avg.saturation->c_inf)
      << weak.saturation->c_inf << " vs " << avg.saturation->c_inf;
}

TEST(Published, TransitionCouplingIsSizeIndependent) {
  for (int n : {6, 7, 8}) {
    spins::ScanConfig config;
    config.n_qubits = n;
    for (int k = 1; k <= 12; ++k) config.h_grid.push_back(0.05 * k);
    AverageOptions options;
    options.samples = 100;
    options.master_seed = 40 + n;
    std::optional<double> h0;
    try {
      h0 = spins::scan_mbl_transition(config, options).h0;
    } catch (const spins::EstimationError& e) {
      ADD_FAILURE() << "N = " << n << ": " << e.what();
      continue;
    }
    ASSERT_TRUE(h0.has_value());
    EXPECT_GE(*h0, 0.2) << "N = " << n;
    EXPECT_LE(*h0, 0.4) << "N = " << n;
  }
}

TEST(Published, CliCircuitSaturation) {
  tools::ExperimentConfig config;
  config.experiment = tools::Experiment::Ruc;
  config.n = 8;
  config.samples = 200;
  config.seed = 1;
  const auto result = tools::run_experiment(config);
  const std::string csv = tools::series_csv(result.series);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4 * 256 + 1);
  const double c_inf = result.summary.at("c_inf").get<double>();
  EXPECT_GE(c_inf, 124.0);
  EXPECT_LE(c_inf, 132.0);
}
