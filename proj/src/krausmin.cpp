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

#include "chanforge/krausmin.hpp"

#include <cmath>
#include <string>

namespace chanforge {

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("Kraus set is empty");
  for (const auto& k : ops_) {
    if (k.rows() != ops_.front().rows() || k.cols() != ops_.front().cols()) {
      throw DimensionError("Kraus set operators differ in shape");
    }
  }
}

KrausSet KrausSet::from(const LambdaMap& lm) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(lm.ops().size());
  for (const auto& o : lm.ops()) ops.push_back(o.op);
  return KrausSet(std::move(ops));
}

ComplexMatrix gram_matrix(const KrausSet& ks) {
  const auto m = static_cast<Eigen::Index>(ks.size());
  ComplexMatrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const Complex v = (ks.ops()[i].adjoint() * ks.ops()[j]).trace();
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

std::size_t minimal_count(const KrausSet& ks, const Tolerances& tol) {
  return numerical_rank(gram_matrix(ks), tol);
}

KrausSet reduce(const KrausSet& ks, const Tolerances& tol) {
  std::vector<ComplexMatrix> ops = ks.ops();
  while (ops.size() > 1) {
    const KrausSet current(ops);
    const auto eig = eigh(gram_matrix(current), tol);
    const auto last = eig.values.size() - 1;
    const double top = eig.values(0);
    if (top > 0.0 && eig.values(last) > tol.eps_rank * top) break;

    // Unitary Q with first column proportional to conj(gamma); row 0 of
    // Q^dag is then a phase times gamma^T.
    const ComplexVector gamma = eig.vectors.col(last);
    Eigen::HouseholderQR<ComplexMatrix> qr(ComplexMatrix(gamma.conjugate()));
    const ComplexMatrix u = ComplexMatrix(qr.householderQ()).adjoint();

    std::vector<ComplexMatrix> rotated;
    rotated.reserve(ops.size() - 1);
    for (Eigen::Index i = 1; i < u.rows(); ++i) {
      ComplexMatrix k = ComplexMatrix::Zero(ops.front().rows(), ops.front().cols());
      for (Eigen::Index j = 0; j < u.cols(); ++j) k += u(i, j) * ops[static_cast<std::size_t>(j)];
      rotated.push_back(std::move(k));
    }
    ops = std::move(rotated);
  }
  // A lone operator that vanishes stays; the map is then zero.
  return KrausSet(std::move(ops));
}

ComplexMatrix choi_matrix(const KrausSet& ks) {
  const std::size_t d = ks.cols();
  ComplexVector phi = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) {
    phi(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  const auto dim = static_cast<Eigen::Index>(ks.rows() * d);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : ks.ops()) {
    const ComplexVector v = tensor(k, identity(d)) * phi;
    out += v * v.adjoint();
  }
  return out;
}

std::size_t upper_bound(std::size_t n, std::size_t r) {
  if (r < 1 || r > n * n) {
    throw ValueError("upper_bound: R = " + std::to_string(r) + " outside [1, N^2]");
  }
  const std::size_t n2 = n * n;
  return n2 * n2 - r * (n2 - 1);
}

ConstraintReport constraint_check(const KrausSet& ks, const SupportSubspace& support,
                                  const std::optional<ComplexVector>& target,
                                  const Tolerances& tol) {
  const auto dim = static_cast<Eigen::Index>(support.dim_total);
  if (static_cast<Eigen::Index>(ks.cols()) != dim || static_cast<Eigen::Index>(ks.rows()) != dim) {
    throw DimensionError("constraint_check: operators do not act on the support space");
  }
  ComplexVector t;
  if (target) {
    t = *target;
  } else {
    const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(dim))));
    t = bell_state(n, 0).amplitudes();
  }
  if (t.size() != dim) throw DimensionError("constraint_check: target has the wrong dimension");
  t.normalize();

  ConstraintReport report;
  report.max_residual = 0.0;
  report.weights.assign(support.dim(), 0.0);
  for (const auto& k : ks.ops()) {
    std::vector<Complex> row;
    for (std::size_t i = 0; i < support.dim(); ++i) {
      const ComplexVector w = k * support.basis.col(static_cast<Eigen::Index>(i));
      const Complex c = t.dot(w);
      report.max_residual = std::max(report.max_residual, (w - c * t).cwiseAbs().maxCoeff());
      report.weights[i] += std::norm(c);
      row.push_back(c);
    }
    report.coefficients.push_back(std::move(row));
  }
  report.pass = report.max_residual <= tol.eps_eq;
  return report;
}

}  // namespace chanforge
