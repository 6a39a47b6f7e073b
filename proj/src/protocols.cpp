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

#include "chanforge/protocols.hpp"

#include <cmath>
#include <numbers>

#include "chanforge/complexity.hpp"
#include "chanforge/random.hpp"

namespace chanforge {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

ComplexVector basis_vector(std::size_t n, std::size_t i) {
  ComplexVector v = ComplexVector::Zero(idx(n));
  v(idx(i)) = 1.0;
  return v;
}

void check_schmidt(std::span<const double> mu) {
  if (mu.empty()) throw ValueError("Schmidt vector is empty");
  double s = 0.0;
  for (double m : mu) {
    if (!(m >= 0.0)) throw ValueError("Schmidt coefficients must be nonnegative");
    s += m * m;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ValueError("Schmidt coefficients must satisfy sum mu^2 = 1");
}

// Single-qubit operator on qubit `q` of three (qubit 0 most significant).
ComplexMatrix on_qubit(const ComplexMatrix& op, std::size_t q) {
  const ComplexMatrix id = identity(2);
  const ComplexMatrix f[3] = {q == 0 ? op : id, q == 1 ? op : id, q == 2 ? op : id};
  return tensor(std::span<const ComplexMatrix>(f, 3));
}

// Encoder C^2 -> C^8: |+> -> |+++>, |-> -> |--->, so a residual logical
// error acts as sigma_z, like the unencoded link.
ComplexMatrix phase_code_encoder() {
  const double h = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2);
  plus << h, h;
  minus << h, -h;
  ComplexMatrix v(8, 2);
  v.col(0) = tensor(tensor(plus, plus), plus);
  v.col(1) = tensor(tensor(minus, minus), minus);
  ComplexMatrix hadamard(2, 2);
  hadamard << h, h, h, -h;
  return v * hadamard;
}

// Kraus operators of syndrome measurement, correction and decoding.
std::vector<ComplexMatrix> phase_code_recovery() {
  const ComplexMatrix v = phase_code_encoder();
  const ComplexMatrix z = pauli_z();
  std::vector<ComplexMatrix> errors = {identity(8), on_qubit(z, 0), on_qubit(z, 1),
                                       on_qubit(z, 2)};
  std::vector<ComplexMatrix> out;
  for (const auto& e : errors) {
    const ComplexMatrix projector = e * v * v.adjoint() * e.adjoint();
    out.push_back(v.adjoint() * e.adjoint() * projector);
  }
  return out;
}

ComplexMatrix phase_code_transmit(const Channel& per_qubit, const ComplexMatrix& rho) {
  if (per_qubit.dim() != 2) throw DimensionError("phase-flip code needs a qubit channel");
  ComplexMatrix state = phase_code_encoder() * rho * phase_code_encoder().adjoint();
  for (std::size_t q = 0; q < 3; ++q) {
    ComplexMatrix next = ComplexMatrix::Zero(8, 8);
    for (const auto& k : per_qubit.kraus()) {
      const ComplexMatrix kq = on_qubit(k, q);
      next += kq * state * kq.adjoint();
    }
    state = std::move(next);
  }
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (const auto& r : phase_code_recovery()) out += r * state * r.adjoint();
  return out;
}

}  // namespace

ComplexMatrix swap_operator(std::size_t dx, std::size_t dy) {
  ComplexMatrix s = ComplexMatrix::Zero(idx(dx * dy), idx(dx * dy));
  for (std::size_t i = 0; i < dx; ++i) {
    for (std::size_t j = 0; j < dy; ++j) s(idx(j * dx + i), idx(i * dy + j)) = 1.0;
  }
  return s;
}

ComplexMatrix cnot() {
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

ControlResources qt_resources(std::size_t n, std::span<const double> mu, const Tolerances& tol) {
  if (mu.size() != n) throw DimensionError("qt_resources: need N Schmidt coefficients");
  check_schmidt(mu);
  const ComplexMatrix sw = swap_operator(n, n);
  std::vector<LocalOutcome> outcomes;
  for (std::size_t eta = 0; eta < n * n; ++eta) {
    const std::size_t phase_index = eta / n;
    const std::size_t shift = eta % n;
    ComplexMatrix correction = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k * phase_index) /
                           static_cast<double>(n);
      correction(idx(k), idx((k + shift) % n)) = std::polar(1.0, angle);
    }
    LocalOutcome o;
    o.u_aa = identity(n * n);
    o.pi_aa = bell_projector(n, eta);
    o.u_bb = sw * tensor(identity(n), correction);
    o.pi_bb = identity(n * n);
    o.label = "eta=" + std::to_string(eta);
    outcomes.push_back(std::move(o));
  }
  return ControlResources(n, Ancilla::schmidt(mu), std::move(outcomes), tol);
}

std::vector<ComplexMatrix> qt_kraus_unreduced(std::span<const double> mu) {
  check_schmidt(mu);
  const std::size_t n = mu.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<ComplexMatrix> out;
  for (std::size_t eta = 0; eta < n * n; ++eta) {
    ComplexMatrix e = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t l = 0; l < n; ++l) e(idx(l), idx(l)) = scale * mu[(l + eta) % n];
    out.push_back(std::move(e));
  }
  return out;
}

Channel qt_channel(std::span<const double> mu, const Tolerances& tol) {
  check_schmidt(mu);
  const std::size_t n = mu.size();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix e = ComplexMatrix::Zero(idx(n), idx(n));
    for (std::size_t l = 0; l < n; ++l) e(idx(l), idx(l)) = mu[(l + j) % n];
    kraus.push_back(std::move(e));
  }
  return Channel(std::move(kraus), tol);
}

double p_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw ValueError("p_mu: mu must lie in [0, 1]");
  return 0.5 - mu * std::sqrt(1.0 - mu * mu);
}

ProtocolOutcome unitary_shift_correction(const ComplexMatrix& u_eps,
                                         const std::optional<ComplexMatrix>& u1,
                                         const Tolerances& tol) {
  if (!is_unitary(u_eps, tol.eps_eq)) throw ValueError("unitary_shift_correction: U_eps is not unitary");
  const std::size_t n = static_cast<std::size_t>(u_eps.rows());
  const ComplexMatrix before = u1.value_or(identity(n));
  if (!is_unitary(before, tol.eps_eq) || before.rows() != u_eps.rows()) {
    throw ValueError("unitary_shift_correction: U1 is not a unitary of matching size");
  }
  const ComplexMatrix after = (u_eps * before).adjoint();

  LocalOutcome o{before, identity(n), after, identity(n), ComplexMatrix(), "shift"};
  ControlResources res(n, Ancilla::none(), {o}, tol);
  Channel ch = unitary_channel(u_eps, tol);
  Channel modified = modified_channel(ch, res, tol);
  ChoiState r = choi_of(ch, tol);
  LambdaMap lm = lambda_map(res);
  ChoiState r_after = apply_lambda(lm, r, tol);
  const double success = r_after.trace();
  const std::size_t chi_before = complexity(ch, tol);
  const std::size_t chi_after = complexity(modified, tol);
  return {std::move(ch), std::move(modified), std::move(r), std::move(r_after), success,
          chi_before, chi_after, std::move(res), std::move(lm)};
}

ControlResources bitflip_resources(double mu, bool include_failures, const Tolerances& tol) {
  if (!(mu >= 0.0 && mu <= 1.0 / std::sqrt(2.0) + 1e-15)) {
    throw ValueError("bitflip_resources: mu must lie in [0, 1/sqrt(2)]");
  }
  const double nu = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  const double gamma = std::min(1.0, mu / nu);
  const double fail = std::sqrt(std::max(0.0, 1.0 - gamma * gamma));

  ComplexMatrix f_s = identity(2), f_s_prime = identity(2);
  f_s(1, 1) = gamma;
  f_s_prime(0, 0) = gamma;
  ComplexMatrix f_u = ComplexMatrix::Zero(2, 2), f_u_prime = ComplexMatrix::Zero(2, 2);
  f_u(1, 1) = fail;
  f_u_prime(0, 0) = fail;

  // Receiver parity projectors on B (x) b'.
  ComplexMatrix even = ComplexMatrix::Zero(4, 4), odd = ComplexMatrix::Zero(4, 4);
  even(0, 0) = even(3, 3) = 1.0;
  odd(1, 1) = odd(2, 2) = 1.0;

  std::vector<LocalOutcome> outcomes;
  for (int pass = 0; pass < (include_failures ? 2 : 1); ++pass) {
    for (std::size_t eta = 0; eta < 2; ++eta) {
      for (std::size_t xi = 0; xi < 2; ++xi) {
        LocalOutcome o;
        o.u_aa = cnot();
        o.pi_aa = tensor(identity(2), basis_vector(2, eta) * basis_vector(2, eta).adjoint());
        // Receiver: parity projector, CNOT (B control), sigma_x on B when the
        // two outcomes differ, then the filter. Written as F Pi' U with
        // U = X^{[eta != xi]} CNOT and Pi' = U Pi_xi U^dag.
        const ComplexMatrix flip = eta != xi ? pauli_x() : identity(2);
        o.u_bb = tensor(flip, identity(2)) * cnot();
        o.pi_bb = o.u_bb * (xi == 0 ? even : odd) * o.u_bb.adjoint();
        const bool success = pass == 0;
        o.filter_b = eta == 0 ? (success ? f_s : f_u) : (success ? f_s_prime : f_u_prime);
        o.label = "eta=" + std::to_string(eta) + ",xi=" + std::to_string(xi) +
                  (success ? ",success" : ",inconclusive");
        outcomes.push_back(std::move(o));
      }
    }
  }
  const double amplitudes[2] = {mu, nu};
  return ControlResources(2, Ancilla::schmidt(amplitudes), std::move(outcomes), tol);
}

ProtocolOutcome bitflip_correction(double mu, double p, const Tolerances& tol) {
  ControlResources res = bitflip_resources(mu, false, tol);
  Channel ch = bit_flip(p);
  Channel modified = modified_channel(ch, res, tol);
  ChoiState r = choi_of(ch, tol);
  LambdaMap lm = lambda_map(res);
  ChoiState r_after = apply_lambda(lm, r, tol);
  const double success = r_after.trace();
  const std::size_t chi_before = complexity(ch, tol);
  const std::size_t chi_after = complexity(modified, tol);
  return {std::move(ch), std::move(modified), std::move(r), std::move(r_after), success,
          chi_before, chi_after, std::move(res), std::move(lm)};
}

double phase_flip_code_logical_error(const Channel& per_qubit) {
  const double h = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2);
  plus << h, h;
  minus << h, -h;
  const ComplexMatrix out = phase_code_transmit(per_qubit, plus * plus.adjoint());
  return minus.dot(out * minus).real();
}

double phase_flip_code_fidelity(const Channel& per_qubit, const PureState& input) {
  if (input.dim() != 2) throw DimensionError("phase-flip code input must be a qubit");
  const ComplexMatrix out = phase_code_transmit(per_qubit, input.density());
  return input.amplitudes().dot(out * input.amplitudes()).real();
}

QeccReport qecc_phase_flip_demo(double mu, const PureState& input, const Tolerances& tol) {
  if (!(mu > 0.0 && mu <= 1.0 / std::sqrt(2.0) + 1e-15)) {
    throw ValueError("qecc_phase_flip_demo: mu must lie in (0, 1/sqrt(2)]");
  }
  if (input.dim() != 2) throw DimensionError("qecc_phase_flip_demo: input must be a qubit");
  const double amplitudes[2] = {mu, std::sqrt(std::max(0.0, 1.0 - mu * mu))};
  const Channel link = qt_channel(amplitudes, tol);

  const double h = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2);
  plus << h, h;
  minus << h, -h;

  QeccReport r;
  r.mu = mu;
  r.p = minus.dot(chanforge::apply(link, plus * plus.adjoint()) * minus).real();
  r.logical_error = phase_flip_code_logical_error(link);
  r.coded_fidelity = phase_flip_code_fidelity(link, input);
  const ComplexVector& psi = input.amplitudes();
  r.uncoded_fidelity = psi.dot(chanforge::apply(link, input.density()) * psi).real();
  r.coding_helps = r.logical_error < r.p - tol.eps_eq;
  return r;
}

Theorem1Trial qt_reduce(const Channel& ch, const Tolerances& tol) {
  const std::size_t n = ch.dim();
  const std::vector<double> uniform(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const ControlResources res = qt_resources(n, uniform, tol);
  const Channel modified = modified_channel(ch, res, tol);
  const ChoiState r_after = choi_of(modified, tol);
  Theorem1Trial t;
  t.complexity_before = complexity(ch, tol);
  t.complexity_after = complexity(modified, tol);
  t.choi_distance = max_abs_diff(r_after.matrix(), bell_projector(n));
  t.lambda_kind = trace_character(lambda_map(res), res.dim_a(), tol).kind;
  return t;
}

Theorem1Report theorem1_witness(std::size_t n, std::size_t trials, std::uint64_t seed,
                                const Tolerances& tol) {
  Rng rng(seed);
  Theorem1Report report{n, seed, {}, true};
  for (std::size_t t = 0; t < trials; ++t) {
    const Channel ch = random_channel(n, n * n, rng);
    auto trial = qt_reduce(ch, tol);
    report.all_reduced = report.all_reduced && trial.complexity_before == n * n &&
                         trial.complexity_after == 0 &&
                         trial.lambda_kind == TraceKind::preserving;
    report.trials.push_back(trial);
  }
  return report;
}

}  // namespace chanforge
