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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chanforge/channels.hpp"
#include "chanforge/control.hpp"

namespace chanforge {

struct ProtocolOutcome {
  Channel channel_before;
  Channel channel_after;
  ChoiState choi_before;
  ChoiState choi_after;  // unnormalized; trace is the success probability
  double success_prob;
  std::size_t complexity_before;
  std::size_t complexity_after;
  ControlResources resources;
  LambdaMap lambda;
};

// U^{xy}_swap on C^dx (x) C^dy.
ComplexMatrix swap_operator(std::size_t dx, std::size_t dy);

// Two-qubit CNOT, first factor is the control.
ComplexMatrix cnot();

// Teleportation resources: Schmidt ancilla mu, generalized Bell measurement
// by the sender and the shift/phase correction plus swap by the receiver.
ControlResources qt_resources(std::size_t n, std::span<const double> mu,
                              const Tolerances& tol = {});

// Teleportation channel for Schmidt coefficients mu: N diagonal Kraus
// operators E_j |l> = mu_{(l + j) mod N} |l>.
Channel qt_channel(std::span<const double> mu, const Tolerances& tol = {});

// The N^2 operators before periodicity reduction:
// E_eta |l> = mu_{(l + eta) mod N} / sqrt(N) |l>.
std::vector<ComplexMatrix> qt_kraus_unreduced(std::span<const double> mu);

// Phase-flip probability of qubit teleportation with Schmidt coefficient mu.
double p_mu(double mu);

// Local unitaries U1 before and U2 = (U_eps U1)^dag after a unitary error.
ProtocolOutcome unitary_shift_correction(const ComplexMatrix& u_eps,
                                         const std::optional<ComplexMatrix>& u1 = std::nullopt,
                                         const Tolerances& tol = {});

// Probabilistic bit-flip correction with a partially entangled qubit pair
// mu|00> + sqrt(1 - mu^2)|11>. Outcomes are indexed (eta, xi) with
// outcome = 2 eta + xi; with `include_failures` the inconclusive filter
// branches follow as outcomes 4..7 and the total channel is trace-preserving.
ControlResources bitflip_resources(double mu, bool include_failures = false,
                                   const Tolerances& tol = {});

ProtocolOutcome bitflip_correction(double mu, double p, const Tolerances& tol = {});

struct QeccReport {
  double mu;
  double p;                 // phase-flip probability of one teleportation channel
  double logical_error;     // after the 3-qubit code
  double coded_fidelity;    // <psi| D(N^{x3}(C(psi))) |psi>
  double uncoded_fidelity;  // <psi| N(psi) |psi>
  bool coding_helps;        // logical_error < p
};

// Logical phase-flip probability of the 3-qubit phase-flip repetition code
// when every physical qubit goes through `per_qubit`.
double phase_flip_code_logical_error(const Channel& per_qubit);

// Fidelity of `input` after encode / noise / majority-vote decode.
double phase_flip_code_fidelity(const Channel& per_qubit, const PureState& input);

QeccReport qecc_phase_flip_demo(double mu, const PureState& input, const Tolerances& tol = {});

struct Theorem1Trial {
  std::size_t complexity_before;
  std::size_t complexity_after;
  double choi_distance;  // max |R~ - Psi_0|
  TraceKind lambda_kind;
};

struct Theorem1Report {
  std::size_t n;
  std::uint64_t seed;
  std::vector<Theorem1Trial> trials;
  bool all_reduced;  // every trial ended at complexity 0 with a preserving lambda
};

// Sufficiency of maximally entangled teleportation for full-complexity
// channels, checked on `trials` seeded random channels.
Theorem1Report theorem1_witness(std::size_t n, std::size_t trials, std::uint64_t seed,
                                const Tolerances& tol = {});

// Teleportation with maximal entanglement applied to one given channel.
Theorem1Trial qt_reduce(const Channel& ch, const Tolerances& tol = {});

}  // namespace chanforge
