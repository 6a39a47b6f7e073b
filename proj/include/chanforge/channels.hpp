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
#include <string_view>
#include <vector>

#include "chanforge/matcore.hpp"

namespace chanforge {

// Completely positive map given by Kraus operators, N -> N. May be
// trace-decreasing but never trace-increasing beyond eps_tp.
class Channel {
 public:
  Channel(std::vector<ComplexMatrix> kraus, const Tolerances& tol = {});

  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  // Sum of E_i^dagger E_i.
  ComplexMatrix kraus_sum() const;

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> kraus_;
};

// Unnormalized Choi-Jamiolkowski matrix on H_B (x) H_A, B factor first.
class ChoiState {
 public:
  ChoiState(std::size_t dim, ComplexMatrix matrix, const Tolerances& tol = {});

  std::size_t dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  std::size_t dim_;
  ComplexMatrix matrix_;
};

// Members acting on the same space, e.g. the alternatives of an unknown noise.
class ChannelFamily {
 public:
  explicit ChannelFamily(std::vector<Channel> members);

  std::size_t dim() const { return members_.front().dim(); }
  const std::vector<Channel>& members() const { return members_; }

 private:
  std::vector<Channel> members_;
};

ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho);

ChoiState choi_of(const Channel& ch, const Tolerances& tol = {});

// Kraus operators from the spectral decomposition of the Choi matrix:
// (E_j)_{b,a} = sqrt(N r_j) (v_j)_{b N + a}, dropping r_j <= eps_rank * max.
Channel kraus_of(const ChoiState& choi, const Tolerances& tol = {});

bool is_trace_preserving(const Channel& ch, const Tolerances& tol = {});

// Qubit Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

Channel identity_channel(std::size_t n);
Channel bit_flip(double p);
Channel phase_flip(double p);
Channel depolarizing(double p);
Channel amplitude_damping(double gamma);
Channel phase_damping(double gamma);
Channel unitary_channel(const ComplexMatrix& u, const Tolerances& tol = {});

// Dispatch by name for the single-parameter qubit channels: "identity",
// "bit_flip", "phase_flip", "depolarizing", "amplitude_damping",
// "phase_damping". Throws ValueError for unknown names or bad parameters.
Channel standard_channel(std::string_view kind, double param);

// Generalized Bell vector |psi_eta> = N^{-1/2} sum_k e^{2 pi i k n / N}
// |k>|(k + m) mod N>, eta = n N + m.
PureState bell_state(std::size_t n, std::size_t eta);

// |psi_0><psi_0| on C^N (x) C^N.
ComplexMatrix bell_projector(std::size_t n, std::size_t eta = 0);

}  // namespace chanforge
