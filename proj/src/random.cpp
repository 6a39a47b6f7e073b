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

#include "chanforge/random.hpp"

#include <cmath>

namespace chanforge {

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

PureState random_pure_state(std::size_t n, Rng& rng) {
  return PureState::normalized(random_ginibre(n, 1, rng).col(0));
}

ComplexMatrix random_density(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

Channel random_channel(std::size_t n, std::size_t kraus_count, Rng& rng) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < kraus_count; ++i) {
    g.push_back(random_ginibre(n, n, rng));
    s += g.back().adjoint() * g.back();
  }
  const auto eig = eigh(s);
  const RealVector inv_roots = eig.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix s_inv_half =
      eig.vectors * inv_roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  for (auto& k : g) k = k * s_inv_half;
  return Channel(std::move(g));
}

}  // namespace chanforge
