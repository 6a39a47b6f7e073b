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

#include "chanforge/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chanforge {

SupportSubspace support(const ChoiState& r, const Tolerances& tol) {
  const auto eig = eigh(r.matrix(), tol);
  const double top = eig.values(0);
  Eigen::Index count = 0;
  if (top > 0.0) {
    while (count < eig.values.size() && eig.values(count) > tol.eps_rank * top) ++count;
  }
  SupportSubspace s;
  s.dim_total = static_cast<std::size_t>(r.matrix().rows());
  s.basis = eig.vectors.leftCols(count);
  return s;
}

std::size_t complexity(const ChannelFamily& family, const Tolerances& tol) {
  const std::size_t n = family.dim();
  const ComplexVector psi0 = bell_state(n, 0).amplitudes();
  std::vector<SupportSubspace> supports;
  bool all_ideal = true;
  Eigen::Index columns = 0;
  for (const auto& member : family.members()) {
    auto s = support(choi_of(member, tol), tol);
    const bool ideal =
        s.dim() == 1 && std::abs(std::abs(psi0.dot(s.basis.col(0))) - 1.0) <= tol.eps_eq;
    all_ideal = all_ideal && ideal;
    columns += s.basis.cols();
    supports.push_back(std::move(s));
  }
  if (all_ideal) return 0;

  ComplexMatrix stacked(static_cast<Eigen::Index>(n * n), columns);
  Eigen::Index at = 0;
  for (const auto& s : supports) {
    stacked.middleCols(at, s.basis.cols()) = s.basis;
    at += s.basis.cols();
  }
  // Rank of the union via the Gram projector sum; orthonormal columns keep
  // its spectrum in [0, members].
  return numerical_rank(stacked * stacked.adjoint(), tol);
}

std::size_t complexity(const Channel& ch, const Tolerances& tol) {
  return complexity(ChannelFamily({ch}), tol);
}

double cj_fidelity(const ChoiState& r) {
  const ComplexVector psi0 = bell_state(r.dim(), 0).amplitudes();
  return psi0.dot(r.matrix() * psi0).real();
}

OptimizationResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> initial, const OptimizerOptions& options) {
  const std::size_t dim = initial.size();
  if (dim == 0) throw DimensionError("optimize: parameter vector is empty");

  using Point = std::vector<double>;
  OptimizationResult result;
  result.best_params.assign(initial.begin(), initial.end());
  result.best_fidelity = objective(result.best_params);

  std::size_t used = 0;
  // Returns false once the budget is exhausted; the point is then not scored.
  auto evaluate = [&](const Point& p, double& value) {
    if (used >= options.budget) return false;
    ++used;
    value = objective(p);
    if (value > result.best_fidelity) {
      result.best_fidelity = value;
      result.best_params = p;
    }
    return true;
  };

  // Minimize the negated objective.
  std::vector<Point> simplex(dim + 1, result.best_params);
  std::vector<double> cost(dim + 1, -result.best_fidelity);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += options.initial_step;
    double v;
    if (!evaluate(simplex[i + 1], v)) {
      result.evaluations = used;
      return result;
    }
    cost[i + 1] = -v;
  }

  auto blend = [](const Point& a, const Point& b, double t) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  std::vector<std::size_t> order(dim + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return cost[x] < cost[y]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];
    if (cost[worst] - cost[best] <= options.tolerance) break;

    Point centroid(dim, 0.0);
    for (std::size_t i : order) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / static_cast<double>(dim);
    }

    double fr;
    const Point reflected = blend(centroid, simplex[worst], -1.0);
    if (!evaluate(reflected, fr)) break;
    if (-fr < cost[best]) {
      double fe;
      const Point expanded = blend(centroid, simplex[worst], -2.0);
      if (!evaluate(expanded, fe)) break;
      if (-fe < -fr) {
        simplex[worst] = expanded;
        cost[worst] = -fe;
      } else {
        simplex[worst] = reflected;
        cost[worst] = -fr;
      }
      continue;
    }
    if (-fr < cost[second]) {
      simplex[worst] = reflected;
      cost[worst] = -fr;
      continue;
    }
    const bool outside = -fr < cost[worst];
    const Point contracted = outside ? blend(centroid, reflected, 0.5)
                                     : blend(centroid, simplex[worst], 0.5);
    double fc;
    if (!evaluate(contracted, fc)) break;
    if (-fc < std::min(-fr, cost[worst])) {
      simplex[worst] = contracted;
      cost[worst] = -fc;
      continue;
    }
    // Shrink toward the best vertex.
    bool exhausted = false;
    for (std::size_t i : order) {
      if (i == best) continue;
      simplex[i] = blend(simplex[best], simplex[i], 0.5);
      double fs;
      if (!evaluate(simplex[i], fs)) {
        exhausted = true;
        break;
      }
      cost[i] = -fs;
    }
    if (exhausted) break;
  }
  result.evaluations = used;
  return result;
}

OptimizationResult optimize_fidelity(const Channel& ch, const ResourceFamily& family,
                                     std::span<const double> initial,
                                     const OptimizerOptions& options, const Tolerances& tol) {
  const ChoiState r = choi_of(ch, tol);
  auto objective = [&](std::span<const double> u) {
    const ControlResources res = family(u);
    if (res.n() != ch.dim()) {
      throw DimensionError("optimize_fidelity: parametrized resources have the wrong N");
    }
    return cj_fidelity(apply_lambda(lambda_map(res), r, tol));
  };
  return nelder_mead_maximize(objective, initial, options);
}

}  // namespace chanforge
