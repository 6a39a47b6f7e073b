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
#include <functional>
#include <span>
#include <vector>

#include "chanforge/channels.hpp"
#include "chanforge/control.hpp"

namespace chanforge {

// Orthonormal basis (columns) of the support of a Choi matrix.
struct SupportSubspace {
  std::size_t dim_total = 0;
  ComplexMatrix basis;

  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
  ComplexMatrix projector() const { return basis * basis.adjoint(); }
};

SupportSubspace support(const ChoiState& r, const Tolerances& tol = {});

// Dimension of the span of all member supports, or 0 when every member's
// support is span{|psi_0>}.
std::size_t complexity(const ChannelFamily& family, const Tolerances& tol = {});
std::size_t complexity(const Channel& ch, const Tolerances& tol = {});

// <psi_0| R |psi_0>.
double cj_fidelity(const ChoiState& r);

using ResourceFamily = std::function<ControlResources(std::span<const double>)>;

struct OptimizerOptions {
  std::size_t budget = 200;      // objective evaluations after the initial point
  double initial_step = 0.5;     // simplex edge length
  double tolerance = 1e-12;      // stop once the simplex spread in F is below this
};

struct OptimizationResult {
  std::vector<double> best_params;
  double best_fidelity = 0.0;
  std::size_t evaluations = 0;
};

// Nelder-Mead maximization of cj_fidelity(lambda[R]) over the parameters of
// `family`. The initial point is always evaluated; `budget` bounds the
// evaluations that follow it, and the search path does not depend on the
// budget, so the best value found is monotone in it.
OptimizationResult optimize_fidelity(const Channel& ch, const ResourceFamily& family,
                                     std::span<const double> initial,
                                     const OptimizerOptions& options = {},
                                     const Tolerances& tol = {});

// The same search over an arbitrary objective, exposed for testing.
OptimizationResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> initial, const OptimizerOptions& options);

}  // namespace chanforge
