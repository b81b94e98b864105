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

#include <cstddef>
#include <optional>
#include <vector>

namespace krylov {

/// C(t) for t = 0..T from a single trajectory.
struct ComplexitySeries {
  std::vector<double> values;
  /// Krylov basis size after each step.
  std::vector<std::size_t> krylov_dim;
  /// Dimension of the space the trajectory lives in.
  std::size_t ambient_dim = 0;
  std::optional<std::size_t> t_sat;
  std::optional<double> c_inf;

  std::size_t steps() const noexcept { return values.empty() ? 0 : values.size() - 1; }

  /// First t at which the Krylov basis spans the whole space.
  std::optional<std::size_t> completion_step() const noexcept {
    for (std::size_t t = 0; t < krylov_dim.size(); ++t) {
      if (ambient_dim > 0 && krylov_dim[t] == ambient_dim) return t;
    }
    return std::nullopt;
  }
};

/// Pointwise mean and standard error over disorder realizations.
struct AveragedSeries {
  std::vector<double> mean;
  std::vector<double> standard_error;
  std::size_t samples = 0;
};

}  // namespace krylov
