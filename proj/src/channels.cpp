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

#include "chanforge/channels.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace chanforge {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValueError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

Channel::Channel(std::vector<ComplexMatrix> kraus, const Tolerances& tol)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("channel needs at least one Kraus operator");
  dim_ = static_cast<std::size_t>(kraus_.front().rows());
  for (const auto& k : kraus_) {
    if (k.rows() != k.cols() || static_cast<std::size_t>(k.rows()) != dim_) {
      throw DimensionError("Kraus operator of shape " + shape_string(k) +
                           " in a channel of dimension " + std::to_string(dim_));
    }
  }
  const auto eig = eigh(kraus_sum(), tol);
  if (eig.values(0) > 1.0 + tol.eps_tp) {
    throw ValueError("Kraus operators are trace-increasing (max eigenvalue " +
                     std::to_string(eig.values(0)) + ")");
  }
}

ComplexMatrix Channel::kraus_sum() const {
  ComplexMatrix s = ComplexMatrix::Zero(kraus_.front().cols(), kraus_.front().cols());
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return s;
}

ChoiState::ChoiState(std::size_t dim, ComplexMatrix matrix, const Tolerances& tol)
    : dim_(dim), matrix_(std::move(matrix)) {
  const auto n2 = static_cast<Eigen::Index>(dim * dim);
  if (dim == 0 || matrix_.rows() != n2 || matrix_.cols() != n2) {
    throw DimensionError("Choi matrix of shape " + shape_string(matrix_) +
                         " for system dimension " + std::to_string(dim));
  }
  const auto eig = eigh(matrix_, tol);
  const double slack = tol.eps_eq * std::max(1.0, std::abs(eig.values(0)));
  if (eig.values(n2 - 1) < -slack) throw ValueError("Choi matrix is not positive");
  if (trace() > 1.0 + tol.eps_tp) {
    throw ValueError("Choi matrix trace " + std::to_string(trace()) + " exceeds 1");
  }
}

ChannelFamily::ChannelFamily(std::vector<Channel> members) : members_(std::move(members)) {
  if (members_.empty()) throw DimensionError("channel family is empty");
  for (const auto& m : members_) {
    if (m.dim() != members_.front().dim()) {
      throw DimensionError("channel family members differ in dimension");
    }
  }
}

ComplexMatrix apply(const Channel& ch, const ComplexMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(ch.dim());
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("state of shape " + shape_string(rho) +
                         " for a channel of dimension " + std::to_string(ch.dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& k : ch.kraus()) out += k * rho * k.adjoint();
  return out;
}

ChoiState choi_of(const Channel& ch, const Tolerances& tol) {
  const std::size_t n = ch.dim();
  const ComplexVector psi0 = bell_state(n, 0).amplitudes();
  const auto id = identity(n);
  const auto n2 = static_cast<Eigen::Index>(n * n);
  ComplexMatrix r = ComplexMatrix::Zero(n2, n2);
  for (const auto& k : ch.kraus()) {
    const ComplexVector v = tensor(k, id) * psi0;
    r += v * v.adjoint();
  }
  return ChoiState(n, std::move(r), tol);
}

Channel kraus_of(const ChoiState& choi, const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(choi.dim());
  const auto eig = eigh(choi.matrix(), tol);
  const double top = eig.values(0);
  const double slack = tol.eps_eq * std::max(1.0, std::abs(top));
  if (eig.values(n * n - 1) < -slack) throw ValueError("kraus_of: negative eigenvalue");

  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index j = 0; j < n * n; ++j) {
    const double r = eig.values(j);
    if (top <= 0.0 || r <= tol.eps_rank * top) break;
    const double scale = std::sqrt(static_cast<double>(n) * r);
    ComplexMatrix e(n, n);
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index a = 0; a < n; ++a) e(b, a) = scale * eig.vectors(b * n + a, j);
    }
    kraus.push_back(std::move(e));
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(n, n));
  return Channel(std::move(kraus), tol);
}

bool is_trace_preserving(const Channel& ch, const Tolerances& tol) {
  return max_abs(ch.kraus_sum() - identity(ch.dim())) <= tol.eps_tp;
}

ComplexMatrix pauli_x() { return mat2(0, 1, 1, 0); }
ComplexMatrix pauli_y() { return mat2(0, Complex(0, -1), Complex(0, 1), 0); }
ComplexMatrix pauli_z() { return mat2(1, 0, 0, -1); }

Channel identity_channel(std::size_t n) { return Channel({identity(n)}); }

Channel bit_flip(double p) {
  check_probability(p, "bit_flip p");
  return Channel({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * pauli_x()});
}

Channel phase_flip(double p) {
  check_probability(p, "phase_flip p");
  return Channel({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * pauli_z()});
}

Channel depolarizing(double p) {
  check_probability(p, "depolarizing p");
  const double q = std::sqrt(p / 4.0);
  return Channel({std::sqrt(1.0 - 3.0 * p / 4.0) * identity(2), q * pauli_x(),
                  q * pauli_y(), q * pauli_z()});
}

Channel amplitude_damping(double gamma) {
  check_probability(gamma, "amplitude_damping gamma");
  return Channel({mat2(1, 0, 0, std::sqrt(1.0 - gamma)), mat2(0, std::sqrt(gamma), 0, 0)});
}

Channel phase_damping(double gamma) {
  check_probability(gamma, "phase_damping gamma");
  return Channel({mat2(1, 0, 0, std::sqrt(1.0 - gamma)), mat2(0, 0, 0, std::sqrt(gamma))});
}

Channel unitary_channel(const ComplexMatrix& u, const Tolerances& tol) {
  if (!is_unitary(u, tol.eps_eq)) throw ValueError("unitary_channel: matrix is not unitary");
  return Channel({u}, tol);
}

Channel standard_channel(std::string_view kind, double param) {
  if (kind == "identity") return identity_channel(2);
  if (kind == "bit_flip") return bit_flip(param);
  if (kind == "phase_flip") return phase_flip(param);
  if (kind == "depolarizing") return depolarizing(param);
  if (kind == "amplitude_damping") return amplitude_damping(param);
  if (kind == "phase_damping") return phase_damping(param);
  throw ValueError("unknown channel kind '" + std::string(kind) + "'");
}

PureState bell_state(std::size_t n, std::size_t eta) {
  if (n == 0 || eta >= n * n) {
    throw ValueError("bell_state: index " + std::to_string(eta) + " out of range for N = " +
                     std::to_string(n));
  }
  const std::size_t phase_index = eta / n;
  const std::size_t shift = eta % n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n * n));
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k * phase_index) /
                         static_cast<double>(n);
    v(static_cast<Eigen::Index>(k * n + (k + shift) % n)) = amp * std::polar(1.0, angle);
  }
  return PureState(std::move(v));
}

ComplexMatrix bell_projector(std::size_t n, std::size_t eta) {
  return bell_state(n, eta).density();
}

}  // namespace chanforge
