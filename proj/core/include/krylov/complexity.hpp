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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "krylov/krylov_basis.hpp"
#include "krylov/series.hpp"
#include "krylov/statevector.hpp"

namespace krylov {

inline constexpr int kMaxOperatorQubits = 5;

template <class Scalar>
using VectorStep = std::function<void(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>&)>;

/// Advances a state by one time step in place.
using StateEvolver = std::function<void(QuantumState&)>;
/// Advances an operator by one Heisenberg step O -> U†OU in place.
using OperatorEvolver = std::function<void(CMatrix&)>;

/// Feeds v0, step(v0), step²(v0), ... (T+1 vectors) through a Krylov basis and
/// records C(t) and the basis size after every step.
template <class Scalar>
ComplexitySeries run_vector_complexity(const VectorStep<Scalar>& step,
                                       Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v0,
                                       std::size_t steps,
                                       double tolerance = kDefaultDependenceTolerance);

/// Spread complexity of |ψ(t)> = U_t|ψ(t-1)>, t = 1..steps.
ComplexitySeries run_state_complexity(const StateEvolver& evolver, QuantumState psi0,
                                      std::size_t steps,
                                      double tolerance = kDefaultDependenceTolerance);

/// (A|B) = Tr(A†B)/D.
Complex hilbert_schmidt(const CMatrix& a, const CMatrix& b);

/// K-complexity of O_t = U_t† O_{t-1} U_t under the Hilbert-Schmidt product.
///
/// Operators are vectorized (column-major) and scaled by 1/√D so that the
/// Euclidean product of the vectors equals (A|B). Throws NormalizationError
/// unless (O0|O0) = 1 within 1e-10, ResourceLimit beyond 5 qubits.
ComplexitySeries run_operator_complexity(const OperatorEvolver& evolver, CMatrix o0,
                                         std::size_t steps,
                                         double tolerance = kDefaultDependenceTolerance);

struct Saturation {
  std::size_t t_sat = 0;
  double c_inf = 0.0;
  std::size_t window = 0;
};

/// max(10, T/10).
std::size_t default_saturation_window(std::size_t steps) noexcept;

/// Plateau value C_inf = mean of the last `window` values; t_sat = first t
/// with C(t) >= (1 - rel_tol)·C_inf. Throws InsufficientData unless the
/// series holds more than `window` values.
Saturation detect_saturation(std::span<const double> values,
                             std::optional<std::size_t> window = std::nullopt,
                             double rel_tol = 0.05);

struct SaturationOptions {
  std::optional<std::size_t> window;
  double rel_tol = 0.05;
};

/// Result of averaging independent realizations of one experiment.
struct DisorderAverage {
  AveragedSeries series;
  /// Plateau analysis of the mean series (absent if the run is too short).
  std::optional<Saturation> saturation;
  /// Per-realization plateau means and their standard error.
  std::vector<double> realization_c_inf;
  double c_inf_stderr = 0.0;
  /// Per-realization step at which the Krylov basis became complete.
  std::vector<std::optional<std::size_t>> completion_steps;
  std::vector<std::uint64_t> seeds;
  /// Filled only when requested.
  std::vector<ComplexitySeries> realizations;
};

/// Builds one realization from its index and derived seed.
using RealizationFn = std::function<ComplexitySeries(std::size_t index, std::uint64_t seed)>;

struct AverageOptions {
  std::size_t samples = 1;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  /// Extra path components mixed into every realization seed (e.g. an h index).
  std::vector<std::uint64_t> stream_prefix;
  SaturationOptions saturation;
  bool keep_realizations = false;
};

/// Seed of realization `index`: derive_seed(master, prefix..., index).
std::uint64_t realization_seed(std::uint64_t master, std::span<const std::uint64_t> prefix,
                               std::size_t index);

/// Runs every realization (in parallel when workers > 1) and folds them in
/// index order, so the result does not depend on the worker count.
DisorderAverage run_disorder_average(const RealizationFn& realization,
                                     const AverageOptions& options);

/// Mean basis-completion step; empty if any realization never completed.
std::optional<double> mean_completion_step(const DisorderAverage& average);

extern template ComplexitySeries run_vector_complexity<double>(const VectorStep<double>&,
                                                               Eigen::VectorXd, std::size_t,
                                                               double);
extern template ComplexitySeries run_vector_complexity<Complex>(const VectorStep<Complex>&,
                                                                Eigen::VectorXcd, std::size_t,
                                                                double);

}  // namespace krylov
