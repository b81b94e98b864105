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

// Hypothesis tests used by the statistical checks.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double dof = 0.0;
};

double mean(const std::vector<double>& x);
/// Sample variance with the n-1 denominator.
double variance(const std::vector<double>& x);
double standard_error(const std::vector<double>& x);

/// P(K > lambda) for the Kolmogorov distribution (asymptotic series).
double kolmogorov_survival(double lambda);

/// One-sample KS test against a continuous CDF.
TestResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample KS test.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson chi-square of observed counts against probabilities. Adjacent bins
/// are pooled (left to right) until each expected count is at least
/// `min_expected`; dof = pooled bins - 1.
TestResult chi_square(const std::vector<double>& observed, const std::vector<double>& probs,
                      double min_expected = 5.0);

/// Spearman rank correlation with a one-sided p-value for rho > 0 (t
/// approximation with n-2 degrees of freedom). Ties receive average ranks.
TestResult spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Two-sided p-value of (a - b) / sqrt(se_a² + se_b²) under N(0, 1).
double two_sample_z(double mean_a, double se_a, double mean_b, double se_b);

/// Ordinary least-squares slope of y on x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stats
