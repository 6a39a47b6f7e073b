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

#include "chanforge/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace chanforge {

void Tolerances::validate() const {
  if (!(eps_rank > 0) || !(eps_tp > 0) || !(eps_eq > 0) || !(eps_herm > 0)) {
    throw ValueError("tolerances must be strictly positive");
  }
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("pure state of dimension 0");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "pure state norm " << norm << " differs from 1";
    throw ValueError(os.str());
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw ValueError("cannot normalize the zero vector");
  return PureState(amplitudes / norm);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index ia = 0; ia < a.rows(); ++ia) {
    for (Eigen::Index ja = 0; ja < a.cols(); ++ja) {
      out.block(ia * b.rows(), ja * b.cols(), b.rows(), b.cols()) = a(ia, ja) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                 static_cast<Eigen::Index>(n));
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (m.rows() != m.cols()) {
    throw DimensionError("partial_trace: matrix is " + shape_string(m));
  }
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                            std::multiplies<>());
  if (dims.empty() || total != static_cast<std::size_t>(m.rows())) {
    throw DimensionError("partial_trace: factor dimensions do not match " +
                         shape_string(m));
  }
  const std::size_t nf = dims.size();
  std::vector<bool> kept(nf, false);
  for (std::size_t k : keep) {
    if (k >= nf) throw DimensionError("partial_trace: factor index out of range");
    kept[k] = true;
  }

  // Strides of each factor in the full composite index.
  std::vector<std::size_t> stride(nf);
  std::size_t s = 1;
  for (std::size_t f = nf; f-- > 0;) {
    stride[f] = s;
    s *= dims[f];
  }

  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t f = 0; f < nf; ++f) (kept[f] ? kept_dim : traced_dim) *= dims[f];

  // Offsets in the full index contributed by each kept / traced multi-index.
  auto offsets = [&](bool want_kept, std::size_t count) {
    std::vector<std::size_t> out(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx;
      std::size_t off = 0;
      for (std::size_t f = nf; f-- > 0;) {
        if (kept[f] != want_kept) continue;
        off += (rem % dims[f]) * stride[f];
        rem /= dims[f];
      }
      out[idx] = off;
    }
    return out;
  };
  const auto kept_off = offsets(true, kept_dim);
  const auto traced_off = offsets(false, traced_dim);

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                          static_cast<Eigen::Index>(kept_dim));
  for (std::size_t r = 0; r < kept_dim; ++r) {
    for (std::size_t c = 0; c < kept_dim; ++c) {
      Complex acc = 0.0;
      for (std::size_t t : traced_off) {
        acc += m(static_cast<Eigen::Index>(kept_off[r] + t),
                 static_cast<Eigen::Index>(kept_off[c] + t));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("shape mismatch: " + shape_string(a) + " vs " + shape_string(b));
  }
  return max_abs(a - b);
}

bool is_hermitian(const ComplexMatrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= eps * std::max(1.0, max_abs(m));
}

bool is_unitary(const ComplexMatrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  const auto id = ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(m.adjoint() * m - id) <= eps && max_abs(m * m.adjoint() - id) <= eps;
}

bool is_projector(const ComplexMatrix& m, double eps) {
  return is_hermitian(m, eps) && max_abs(m * m - m) <= eps;
}

HermitianEigen eigh(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw DimensionError("eigh: matrix is " + shape_string(m));
  if (!is_hermitian(m, tol.eps_herm)) throw ValueError("eigh: matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error("eigh: solver did not converge");
  // Eigen returns ascending order.
  HermitianEigen out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

SchmidtDecomposition schmidt(const PureState& psi, std::size_t dim_a, std::size_t dim_b) {
  if (dim_a * dim_b != psi.dim()) {
    throw DimensionError("schmidt: " + std::to_string(dim_a) + " x " +
                         std::to_string(dim_b) + " does not match state dimension " +
                         std::to_string(psi.dim()));
  }
  const auto na = static_cast<Eigen::Index>(dim_a);
  const auto nb = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix amp(na, nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) amp(i, j) = psi.amplitudes()(i * nb + j);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();
  return out;
}

std::size_t numerical_rank(const ComplexMatrix& m, const Tolerances& tol) {
  const auto eig = eigh(m, tol);
  if (eig.values.size() == 0) return 0;
  const double top = eig.values(0);
  const double slack = tol.eps_eq * std::max(1.0, std::abs(top));
  if (eig.values(eig.values.size() - 1) < -slack) {
    throw ValueError("numerical_rank: matrix has a negative eigenvalue");
  }
  if (top <= 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > tol.eps_rank * top) ++rank;
  }
  return rank;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
  const auto eig = eigh(m, tol);
  RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

std::string shape_string(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace chanforge
