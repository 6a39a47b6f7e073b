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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chanforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or factor dimensions that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Arguments outside their domain: non-Hermitian input, negative spectrum,
// probabilities outside [0, 1], unknown names.
class ValueError : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double eps_rank = 1e-10;  // relative eigenvalue cutoff
  double eps_tp = 1e-9;     // trace-preservation slack
  double eps_eq = 1e-9;     // matrix equality slack
  double eps_herm = 1e-10;  // Hermiticity slack

  // Throws ValueError unless every field is strictly positive.
  void validate() const;
};

// Unit-norm state vector.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexMatrix density() const { return amplitudes_ * amplitudes_.adjoint(); }

  // Rescales to unit norm; throws ValueError on a zero vector.
  static PureState normalized(ComplexVector amplitudes);

 private:
  ComplexVector amplitudes_;
};

struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // column j pairs with values[j]
};

struct SchmidtDecomposition {
  RealVector coefficients;  // descending, length min(dim_a, dim_b)
  ComplexMatrix basis_a;    // columns |a_k>
  ComplexMatrix basis_b;    // columns |b_k>
};

// Kronecker product. Composite index is i_a * rows(b) + i_b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

ComplexMatrix identity(std::size_t n);

// Traces out every factor not listed in `keep`. Factors are ordered with the
// first one most significant; `keep` may be given in any order, the result
// keeps the original factor order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

// Largest |m(i,j)|, 0 for an empty matrix.
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double eps);
bool is_unitary(const ComplexMatrix& m, double eps);
bool is_projector(const ComplexMatrix& m, double eps);

HermitianEigen eigh(const ComplexMatrix& m, const Tolerances& tol = {});

SchmidtDecomposition schmidt(const PureState& psi, std::size_t dim_a,
                             std::size_t dim_b);

// Eigenvalues above eps_rank * max eigenvalue. Throws ValueError when an
// eigenvalue is negative beyond the slack allowed for a positive matrix.
std::size_t numerical_rank(const ComplexMatrix& m, const Tolerances& tol = {});

// Principal square root of a positive semidefinite matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol = {});

std::string shape_string(const ComplexMatrix& m);

}  // namespace chanforge
