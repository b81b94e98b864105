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

#include "krylov/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "krylov/error.hpp"

namespace krylov::analytics {

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;

// Σ|terms| / |Σ terms| above which the alternating sum cannot deliver 1e-10
// relative accuracy in double precision.
constexpr double kMaxCancellation = 1e5;

double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (num == 0) return 0.0;
  Float q = Float(num) / Float(den);
  return q.convert_to<double>();
}

BigInt pow_big(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

BigInt falling_factorial(std::uint64_t d, std::uint64_t m) {
  BigInt f = 1;
  for (std::uint64_t k = 0; k < m; ++k) f *= (d - k);
  return f;
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_dim(std::uint64_t dim) {
  if (dim < 1) throw InvalidParameter("dimension D must be >= 1");
}

}  // namespace

double expected_complexity_haar(std::uint64_t t, std::uint64_t dim) {
  require_dim(dim);
  if (t >= dim) return static_cast<double>(dim) / 2.0;
  const double td = static_cast<double>(t);
  return td - td * (td - 1.0) / (2.0 * static_cast<double>(dim));
}

double exact_expected_complexity_haar(std::uint64_t t, std::uint64_t dim) {
  require_dim(dim);
  const double d = static_cast<double>(dim);
  if (t + 1 >= dim) return (d - 1.0) / 2.0;
  const double td = static_cast<double>(t);
  return td - td * (td + 1.0) / (2.0 * d);
}

StirlingTable::StirlingTable(std::uint64_t n_max) : n_max_(n_max) {
  rows_.resize(n_max + 1);
  rows_[0] = {BigInt(1)};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    auto& row = rows_[n];
    const auto& prev = rows_[n - 1];
    row.assign(n + 1, BigInt(0));
    for (std::uint64_t m = 1; m <= n; ++m) {
      // S(n, m) = m·S(n-1, m) + S(n-1, m-1)
      BigInt carry = m <= n - 1 ? BigInt(m) * prev[m] : BigInt(0);
      row[m] = carry + prev[m - 1];
    }
  }
}

const BigInt& StirlingTable::operator()(std::uint64_t n, std::uint64_t m) const {
  if (n > n_max_) {
    throw IndexError("Stirling table holds n <= " + std::to_string(n_max_));
  }
  if (m > n) return zero_;
  return rows_[n][m];
}

const StirlingTable& stirling_table() {
  static const StirlingTable table(kExactMaxDraws);
  return table;
}

double coverage_probability_exact(std::uint64_t n, std::uint64_t dim) {
  require_dim(dim);
  if (dim > n) return 0.0;
  if (n > kExactMaxDraws) {
    throw InvalidParameter("exact coverage evaluation supports n <= " +
                           std::to_string(kExactMaxDraws));
  }
  BigInt num = falling_factorial(dim, dim) * stirling_table()(n, dim);
  return ratio_to_double(num, pow_big(dim, n));
}

std::vector<double> occupancy_distribution(std::uint64_t n, std::uint64_t dim) {
  require_dim(dim);
  const std::uint64_t top = std::min(n, dim);
  std::vector<double> p(top + 1, 0.0);
  p[0] = 1.0;
  const double d = static_cast<double>(dim);
  for (std::uint64_t draw = 1; draw <= n; ++draw) {
    const std::uint64_t hi = std::min(draw, top);
    for (std::uint64_t m = hi; m >= 1; --m) {
      // Either a repeat of one of m seen outcomes, or a new one.
      p[m] = p[m] * (static_cast<double>(m) / d) +
             p[m - 1] * (static_cast<double>(dim - (m - 1)) / d);
    }
    p[0] = 0.0;
  }
  return p;
}

double coverage_probability_logspace(std::uint64_t n, std::uint64_t dim) {
  require_dim(dim);
  if (dim > n) return 0.0;
  if (dim == 1) return 1.0;
  const double d = static_cast<double>(dim);
  CompensatedSum sum;
  double magnitude = 0.0;
  double log_binom = 0.0;  // ln C(D, k)
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (k > 0) log_binom += std::log(static_cast<double>(dim - k + 1) / static_cast<double>(k));
    const double log_term =
        log_binom + static_cast<double>(n) * std::log1p(-static_cast<double>(k) / d);
    const double term = std::exp(log_term);
    magnitude += term;
    sum.add(k % 2 == 0 ? term : -term);
  }
  const double value = sum.value();
  if (value > 0.0 && magnitude <= kMaxCancellation * value) return std::min(1.0, value);
  return occupancy_distribution(n, dim).back();
}

double coverage_probability(std::uint64_t n, std::uint64_t dim) {
  if (n <= kExactMaxDraws) return coverage_probability_exact(n, dim);
  return coverage_probability_logspace(n, dim);
}

double partial_coverage_probability_exact(std::uint64_t n, std::uint64_t m,
                                          std::uint64_t dim) {
  require_dim(dim);
  if (m > n || m > dim) return 0.0;
  if (n > kExactMaxDraws) {
    throw InvalidParameter("exact coverage evaluation supports n <= " +
                           std::to_string(kExactMaxDraws));
  }
  // C(D, m)·m! = D!/(D-m)!
  BigInt num = falling_factorial(dim, m) * stirling_table()(n, m);
  return ratio_to_double(num, pow_big(dim, n));
}

double partial_coverage_probability_logspace(std::uint64_t n, std::uint64_t m,
                                             std::uint64_t dim) {
  require_dim(dim);
  if (m > n || m > dim) return 0.0;
  if (m == 0) return n == 0 ? 1.0 : 0.0;
  // P(n, m) = C(D, m)·(m/D)^n·P_cover(n, m).
  double log_binom = 0.0;
  for (std::uint64_t k = 1; k <= m; ++k) {
    log_binom += std::log(static_cast<double>(dim - k + 1) / static_cast<double>(k));
  }
  const double log_prefix =
      log_binom + static_cast<double>(n) *
                      std::log(static_cast<double>(m) / static_cast<double>(dim));
  const double cover = coverage_probability_logspace(n, m);
  if (cover <= 0.0) return 0.0;
  return std::exp(log_prefix + std::log(cover));
}

double partial_coverage_probability(std::uint64_t n, std::uint64_t m, std::uint64_t dim) {
  if (n <= kExactMaxDraws) return partial_coverage_probability_exact(n, m, dim);
  return partial_coverage_probability_logspace(n, m, dim);
}

SaturationTimeBound saturation_time_bound(std::uint64_t dim, double epsilon) {
  require_dim(dim);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidParameter("epsilon must lie in (0, 1)");
  }
  const double target = 1.0 - epsilon;
  const double d = static_cast<double>(dim);
  SaturationTimeBound bound;
  bound.proxy = d * std::log(d / epsilon);

  // Invariant: P(lo) < target <= P(hi).
  std::uint64_t lo = dim - 1;
  std::uint64_t hi = std::max<std::uint64_t>(dim, static_cast<std::uint64_t>(std::ceil(bound.proxy)));
  while (coverage_probability(hi, dim) < target) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (coverage_probability(mid, dim) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  bound.draws = hi;
  return bound;
}

MinComplexityEstimate min_complexity_estimate(std::uint64_t t, std::uint64_t dim) {
  require_dim(dim);
  if (t < 1) throw InvalidParameter("min_complexity_estimate needs t >= 1");
  MinComplexityEstimate est;
  est.proxy = std::cbrt(static_cast<double>(dim) * static_cast<double>(t));

  const std::uint64_t top = std::min(t, dim);
  double best = -1.0;
  for (std::uint64_t m = 1; m <= top; ++m) {
    const double p = partial_coverage_probability(t, m, dim);
    est.expectation += static_cast<double>(m) * p;
    if (p > best) {
      best = p;
      est.m_max = m;
    }
  }
  est.estimate = static_cast<double>(est.m_max) * best;
  return est;
}

AveragedSeries aggregate(std::span<const ComplexitySeries> runs) {
  if (runs.empty()) throw AggregationError("cannot aggregate an empty list of series");
  const std::size_t len = runs.front().values.size();
  for (const auto& r : runs) {
    if (r.values.size() != len) {
      throw AggregationError("series lengths differ (" + std::to_string(len) + " vs " +
                             std::to_string(r.values.size()) + ")");
    }
  }
  AveragedSeries out;
  out.samples = runs.size();
  out.mean.assign(len, 0.0);
  out.standard_error.assign(len, 0.0);
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    for (std::size_t t = 0; t < len; ++t) out.mean[t] += r.values[t];
  }
  for (double& m : out.mean) m /= n;
  if (runs.size() > 1) {
    for (const auto& r : runs) {
      for (std::size_t t = 0; t < len; ++t) {
        const double dev = r.values[t] - out.mean[t];
        out.standard_error[t] += dev * dev;
      }
    }
    for (double& s : out.standard_error) s = std::sqrt(s / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

}  // namespace krylov::analytics
