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

#include <stdexcept>
#include <string>

namespace krylov {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable tag, e.g. "invalid-dimension".
  virtual const char* kind() const noexcept { return "error"; }
};

#define KRYLOV_DEFINE_ERROR(Name, Tag)                     \
  class Name : public Error {                              \
   public:                                                 \
    using Error::Error;                                    \
    const char* kind() const noexcept override { return Tag; } \
  }

KRYLOV_DEFINE_ERROR(InvalidDimension, "invalid-dimension");
KRYLOV_DEFINE_ERROR(InvalidParameter, "invalid-parameter");
KRYLOV_DEFINE_ERROR(IndexError, "index");
KRYLOV_DEFINE_ERROR(LayerError, "layer");
KRYLOV_DEFINE_ERROR(NormalizationError, "normalization");
KRYLOV_DEFINE_ERROR(NumericalInconsistency, "numerical-inconsistency");
KRYLOV_DEFINE_ERROR(InsufficientData, "insufficient-data");
KRYLOV_DEFINE_ERROR(AggregationError, "aggregation");
KRYLOV_DEFINE_ERROR(ResourceLimit, "resource-limit");

#undef KRYLOV_DEFINE_ERROR

}  // namespace krylov
