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
#include <optional>
#include <vector>

#include "chanforge/complexity.hpp"
#include "chanforge/control.hpp"
#include "chanforge/matcore.hpp"

namespace chanforge {

// Nonempty list of equally shaped operators defining X -> sum K X K^dag.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  static KrausSet from(const LambdaMap& lm);

  std::size_t size() const { return ops_.size(); }
  std::size_t rows() const { return static_cast<std::size_t>(ops_.front().rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(ops_.front().cols()); }
  const std::vector<ComplexMatrix>& ops() const { return ops_; }

 private:
  std::vector<ComplexMatrix> ops_;
};

// G_ij = Tr(K_i^dag K_j).
ComplexMatrix gram_matrix(const KrausSet& ks);

// Numerical rank of the Gram matrix.
std::size_t minimal_count(const KrausSet& ks, const Tolerances& tol = {});

// Repeatedly finds a unit null vector gamma of the Gram matrix, rotates the
// set by a unitary whose first row is gamma (so the first rotated operator is
// sum gamma_j K_j = 0) and drops that operator. Stops at minimal_count(ks).
KrausSet reduce(const KrausSet& ks, const Tolerances& tol = {});

// sum_i (K_i (x) I)|Phi><Phi|(K_i (x) I)^dag with |Phi> = d^{-1/2} sum |ii>,
// d = number of columns.
ComplexMatrix choi_matrix(const KrausSet& ks);

// N^4 - R (N^2 - 1): largest irreducible number of operators when R support
// vectors are constrained.
std::size_t upper_bound(std::size_t n, std::size_t r);

struct ConstraintReport {
  // coefficients[j][i]: <target| K_j |r_i>
  std::vector<std::vector<Complex>> coefficients;
  // sum_j |coefficients[j][i]|^2 for each support vector
  std::vector<double> weights;
  double max_residual;  // largest |K_j r_i - c target|
  bool pass;
};

// Checks that every operator maps every support vector onto a multiple of the
// target (|psi_0> of H_B (x) H_A when none is given).
ConstraintReport constraint_check(const KrausSet& ks, const SupportSubspace& support,
                                  const std::optional<ComplexVector>& target = std::nullopt,
                                  const Tolerances& tol = {});

}  // namespace chanforge
