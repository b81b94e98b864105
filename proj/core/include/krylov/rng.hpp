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
#include <initializer_list>
#include <random>

namespace krylov {

using Rng = std::mt19937_64;

/// One step of the SplitMix64 sequence; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Hashes a path of indices below `master` into an independent 64-bit seed.
///
/// Streams are addressed by (master_seed, realization, ...) rather than by the
/// order in which workers pick up jobs, so results do not depend on
/// scheduling.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path) noexcept;

inline Rng make_stream(std::uint64_t master,
                       std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(master, path));
}

/// Sub-stream tags used by every realization driver.
enum StreamTag : std::uint64_t {
  kGateStream = 0,
  kMeasurementStream = 1,
  kStateStream = 2,
};

}  // namespace krylov
