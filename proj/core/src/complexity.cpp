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

#include "krylov/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "krylov/analytics.hpp"
#include "krylov/error.hpp"
#include "krylov/parallel.hpp"

namespace krylov {

template <class Scalar>
ComplexitySeries run_vector_complexity(const VectorStep<Scalar>& step,
                                       Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v0,
                                       std::size_t steps, double tolerance) {
  const Eigen::Index dim = v0.size();
  const auto expected = static_cast<Eigen::Index>(std::min<std::size_t>(steps + 1, dim));
  KrylovBasis<Scalar> basis(dim, tolerance, expected);

  ComplexitySeries series;
  series.values.reserve(steps + 1);
  series.krylov_dim.reserve(steps + 1);
  series.ambient_dim = static_cast<std::size_t>(dim);

  auto v = std::move(v0);
  for (std::size_t t = 0;; ++t) {
    auto record = basis.extend_and_project(v, static_cast<std::int64_t>(t));
    series.values.push_back(spread_complexity(record));
    series.krylov_dim.push_back(static_cast<std::size_t>(basis.size()));
    if (t == steps) break;
    step(v);
  }
  return series;
}

template ComplexitySeries run_vector_complexity<double>(const VectorStep<double>&,
                                                        Eigen::VectorXd, std::size_t, double);
template ComplexitySeries run_vector_complexity<Complex>(const VectorStep<Complex>&,
                                                         Eigen::VectorXcd, std::size_t, double);

ComplexitySeries run_state_complexity(const StateEvolver& evolver, QuantumState psi0,
                                      std::size_t steps, double tolerance) {
  const int n = psi0.n_qubits();
  CVector v0 = psi0.amplitudes();
  QuantumState state = std::move(psi0);
  VectorStep<Complex> step = [&](CVector& v) {
    evolver(state);
    v = state.amplitudes();
    if (state.n_qubits() != n) throw InvalidDimension("evolver changed the qubit count");
  };
  return run_vector_complexity<Complex>(step, std::move(v0), steps, tolerance);
}

Complex hilbert_schmidt(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidDimension("Hilbert-Schmidt product of mismatched operators");
  }
  return (a.adjoint() * b).trace() / static_cast<double>(a.rows());
}

ComplexitySeries run_operator_complexity(const OperatorEvolver& evolver, CMatrix o0,
                                         std::size_t steps, double tolerance) {
  const Eigen::Index d = o0.rows();
  if (d < 1 || o0.cols() != d) throw InvalidDimension("operator must be square and non-empty");
  if (d > (Eigen::Index{1} << kMaxOperatorQubits)) {
    throw ResourceLimit("operator runs are capped at N <= " +
                        std::to_string(kMaxOperatorQubits) + " qubits");
  }
  const double hs_norm = hilbert_schmidt(o0, o0).real();
  if (std::abs(hs_norm - 1.0) > kInputNormTolerance) {
    throw NormalizationError("initial operator must satisfy Tr(O†O)/D = 1, got " +
                             std::to_string(hs_norm));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  auto vectorize = [&](const CMatrix& o) {
    return CVector(Eigen::Map<const CVector>(o.data(), d * d) * scale);
  };

  CMatrix op = std::move(o0);
  CVector v0 = vectorize(op);
  VectorStep<Complex> step = [&](CVector& v) {
    evolver(op);
    v = vectorize(op);
  };
  return run_vector_complexity<Complex>(step, std::move(v0), steps, tolerance);
}

std::size_t default_saturation_window(std::size_t steps) noexcept {
  return std::max<std::size_t>(10, steps / 10);
}

Saturation detect_saturation(std::span<const double> values, std::optional<std::size_t> window,
                             double rel_tol) {
  const std::size_t steps = values.empty() ? 0 : values.size() - 1;
  const std::size_t w = window.value_or(default_saturation_window(steps));
  if (w == 0 || values.size() <= w) {
    throw InsufficientData("saturation analysis needs more than " + std::to_string(w) +
                           " values, got " + std::to_string(values.size()));
  }
  const double c_inf =
      std::accumulate(values.end() - static_cast<std::ptrdiff_t>(w), values.end(), 0.0) /
      static_cast<double>(w);
  const double threshold = (1.0 - rel_tol) * c_inf;
  std::size_t t_sat = values.size() - 1;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (values[t] >= threshold) {
      t_sat = t;
      break;
    }
  }
  return Saturation{t_sat, c_inf, w};
}

std::uint64_t realization_seed(std::uint64_t master, std::span<const std::uint64_t> prefix,
                               std::size_t index) {
  std::uint64_t s = master;
  for (std::uint64_t p : prefix) s = derive_seed(s, {p});
  return derive_seed(s, {static_cast<std::uint64_t>(index)});
}

DisorderAverage run_disorder_average(const RealizationFn& realization,
                                     const AverageOptions& options) {
  if (options.samples < 1) throw InvalidParameter("at least one realization is required");
  std::vector<ComplexitySeries> runs(options.samples);
  DisorderAverage out;
  out.seeds.resize(options.samples);
  for (std::size_t i = 0; i < options.samples; ++i) {
    out.seeds[i] = realization_seed(options.master_seed, options.stream_prefix, i);
  }
  parallel_for_index(options.samples, options.workers,
                     [&](std::size_t i) { runs[i] = realization(i, out.seeds[i]); });

  out.series = analytics::aggregate(runs);
  out.completion_steps.reserve(runs.size());
  for (const auto& run : runs) out.completion_steps.push_back(run.completion_step());

  const std::size_t steps = runs.front().steps();
  const std::size_t w = options.saturation.window.value_or(default_saturation_window(steps));
  if (runs.front().values.size() > w) {
    out.saturation = detect_saturation(out.series.mean, w, options.saturation.rel_tol);
    out.realization_c_inf.reserve(runs.size());
    for (auto& run : runs) {
      Saturation s = detect_saturation(run.values, w, options.saturation.rel_tol);
      run.t_sat = s.t_sat;
      run.c_inf = s.c_inf;
      out.realization_c_inf.push_back(s.c_inf);
    }
    if (out.realization_c_inf.size() > 1) {
      const double n = static_cast<double>(out.realization_c_inf.size());
      const double mean =
          std::accumulate(out.realization_c_inf.begin(), out.realization_c_inf.end(), 0.0) / n;
      double ss = 0.0;
      for (double c : out.realization_c_inf) ss += (c - mean) * (c - mean);
      out.c_inf_stderr = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
  }
  if (options.keep_realizations) out.realizations = std::move(runs);
  return out;
}

std::optional<double> mean_completion_step(const DisorderAverage& average) {
  if (average.completion_steps.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& t : average.completion_steps) {
    if (!t) return std::nullopt;
    sum += static_cast<double>(*t);
  }
  return sum / static_cast<double>(average.completion_steps.size());
}

}  // namespace krylov
