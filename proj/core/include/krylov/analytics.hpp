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

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "krylov/series.hpp"

/// Closed-form predictions for Haar evolution, coupon-collector bounds for the
/// fully monitored circuit, and disorder-averaging statistics.
namespace krylov::analytics {

using BigInt = boost::multiprecision::cpp_int;

/// Largest draw count evaluated with exact integer arithmetic.
inline constexpr std::uint64_t kExactMaxDraws = 64;

/// t - t(t-1)/(2D) for t < D and the plateau D/2 from t = D on.
double expected_complexity_haar(std::uint64_t t, std::uint64_t dim);

/// Exact mean for independent Haar states: t - t(t+1)/(2D) for t < D, and
/// (D-1)/2 once the basis is complete. Differs from the formula above by t/D.
double exact_expected_complexity_haar(std::uint64_t t, std::uint64_t dim);

/// Stirling numbers of the second kind S(n, m) for 0 <= m <= n <= n_max.
class StirlingTable {
 public:
  explicit StirlingTable(std::uint64_t n_max);

  std::uint64_t n_max() const noexcept { return n_max_; }
  /// S(n, m); zero for m > n. Requires n <= n_max.
  const BigInt& operator()(std::uint64_t n, std::uint64_t m) const;

 private:
  std::uint64_t n_max_;
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_ = 0;
};

/// Shared table up to kExactMaxDraws, built on first use.
const StirlingTable& stirling_table();

/// Probability that n uniform draws from D outcomes hit every outcome:
/// D!·S(n,D)/D^n. Exact arithmetic for n <= 64, otherwise the log-space path.
double coverage_probability(std::uint64_t n, std::uint64_t dim);
double coverage_probability_exact(std::uint64_t n, std::uint64_t dim);
/// Inclusion-exclusion Σ_k (-1)^k C(D,k)(1-k/D)^n with compensated summation.
/// When the alternating sum is too ill-conditioned to give 1e-10 relative
/// accuracy, the all-positive occupancy recursion is used instead.
double coverage_probability_logspace(std::uint64_t n, std::uint64_t dim);

/// Probability that exactly m distinct outcomes appear in n draws from D:
/// C(D,m)·m!·S(n,m)/D^n. Zero when m > n or m > D.
double partial_coverage_probability(std::uint64_t n, std::uint64_t m, std::uint64_t dim);
double partial_coverage_probability_exact(std::uint64_t n, std::uint64_t m, std::uint64_t dim);
double partial_coverage_probability_logspace(std::uint64_t n, std::uint64_t m,
                                             std::uint64_t dim);

/// Full distribution of the number of distinct outcomes after n draws,
/// indexed by m = 0..min(n, D), from the occupancy Markov chain.
std::vector<double> occupancy_distribution(std::uint64_t n, std::uint64_t dim);

struct SaturationTimeBound {
  /// Smallest n with coverage_probability(n, D) >= 1 - epsilon.
  std::uint64_t draws = 0;
  /// D·ln(D/epsilon).
  double proxy = 0.0;
};

/// Throws InvalidParameter unless 0 < epsilon < 1 and D >= 1.
SaturationTimeBound saturation_time_bound(std::uint64_t dim, double epsilon);

struct MinComplexityEstimate {
  std::uint64_t m_max = 0;
  /// m_max · P(t, m_max).
  double estimate = 0.0;
  /// (D·t)^{1/3}.
  double proxy = 0.0;
  /// Σ_m m·P(t, m), reported for comparison with the modal estimate.
  double expectation = 0.0;
};

MinComplexityEstimate min_complexity_estimate(std::uint64_t t, std::uint64_t dim);

/// Pointwise mean and standard error (sample sd / √n, zero for one series).
/// Throws AggregationError on an empty list or unequal lengths.
AveragedSeries aggregate(std::span<const ComplexitySeries> runs);

}  // namespace krylov::analytics
