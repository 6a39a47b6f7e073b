// Copyright 2026 The chanforge Authors
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
#include <cstdint>
#include <random>

#include "chanforge/channels.hpp"
#include "chanforge/matcore.hpp"

namespace chanforge {

using Rng = std::mt19937_64;

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

PureState random_pure_state(std::size_t n, Rng& rng);

// Full-rank density matrix from a square Ginibre matrix.
ComplexMatrix random_density(std::size_t n, Rng& rng);

// Trace-preserving channel with `kraus_count` operators G_i S^{-1/2}, where
// G_i are Ginibre matrices and S = sum G_i^dag G_i.
Channel random_channel(std::size_t n, std::size_t kraus_count, Rng& rng);

}  // namespace chanforge
