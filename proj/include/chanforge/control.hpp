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
#include <span>
#include <string>
#include <vector>

#include "chanforge/channels.hpp"
#include "chanforge/matcore.hpp"

namespace chanforge {

// Shared ancilla on H_a (x) H_b as a convex mixture of pure states. Each pure
// component is stored as its coefficient matrix C with psi = sum C(j,k)|j>|k>.
class Ancilla {
 public:
  struct Component {
    double weight;
    ComplexMatrix coefficients;  // dim_a x dim_b
  };

  // sum_k mu_k |k>|k>; requires mu_k >= 0 and sum mu_k^2 = 1.
  static Ancilla schmidt(std::span<const double> mu);
  static Ancilla pure(const PureState& psi, std::size_t dim_a, std::size_t dim_b);
  // Weights must be nonnegative and sum to 1.
  static Ancilla mixture(std::span<const double> weights, std::span<const PureState> states,
                         std::size_t dim_a, std::size_t dim_b);
  // One-dimensional a and b: no ancilla at all.
  static Ancilla none();

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const std::vector<Component>& components() const { return components_; }
  bool is_pure() const { return components_.size() == 1; }

  ComplexMatrix density() const;

 private:
  Ancilla(std::size_t dim_a, std::size_t dim_b, std::vector<Component> components);

  std::size_t dim_a_;
  std::size_t dim_b_;
  std::vector<Component> components_;
};

// Local operations attached to one (extended) measurement outcome.
// Sender: L^{Aa} = Pi^{Aa} U^{Aa}. Receiver: L^{Bb} = (F (x) I^b) Pi^{Bb} U^{Bb},
// where F is an optional filter on B (one Kraus branch of a receiver POVM).
struct LocalOutcome {
  ComplexMatrix u_aa;
  ComplexMatrix pi_aa;
  ComplexMatrix u_bb;
  ComplexMatrix pi_bb;
  ComplexMatrix filter_b;  // empty means identity
  std::string label;
};

class ControlResources {
 public:
  ControlResources(std::size_t n, Ancilla ancilla, std::vector<LocalOutcome> outcomes,
                   const Tolerances& tol = {});

  std::size_t n() const { return n_; }
  std::size_t dim_a() const { return ancilla_.dim_a(); }
  std::size_t dim_b() const { return ancilla_.dim_b(); }
  const Ancilla& ancilla() const { return ancilla_; }
  const std::vector<LocalOutcome>& outcomes() const { return outcomes_; }

  ComplexMatrix sender_operation(std::size_t eta) const;
  ComplexMatrix receiver_operation(std::size_t eta) const;

  // Sum of sender projectors is I^{Aa}, and every receiver projector and
  // filter is the identity.
  bool deterministic() const { return deterministic_; }

 private:
  std::size_t n_;
  Ancilla ancilla_;
  std::vector<LocalOutcome> outcomes_;
  bool deterministic_ = false;
};

// Operators <i|^x op |j>^x on the system factor of op acting on S (x) X.
class AncillaBlocks {
 public:
  AncillaBlocks(const ComplexMatrix& op, std::size_t system_dim, std::size_t ancilla_dim);

  std::size_t system_dim() const { return system_dim_; }
  std::size_t ancilla_dim() const { return ancilla_dim_; }
  const ComplexMatrix& at(std::size_t i, std::size_t j) const;

 private:
  std::size_t system_dim_;
  std::size_t ancilla_dim_;
  std::vector<ComplexMatrix> blocks_;
};

AncillaBlocks blocks_A(const ControlResources& res, std::size_t eta);
AncillaBlocks blocks_B(const ControlResources& res, std::size_t eta);

// The controlled channel: sum over outcomes of
// Tr_ab( L^{Bb} eps[ L^{Aa} (rho (x) rho^{ab}) L^{Aa dag} ] L^{Bb dag} ).
Channel modified_channel(const Channel& ch, const ControlResources& res,
                         const Tolerances& tol = {});

struct LambdaOperator {
  std::size_t outcome;    // extended outcome index
  std::size_t k;          // receiver ancilla index
  std::size_t l;          // sender ancilla index
  std::size_t component;  // ancilla mixture component
  ComplexMatrix op;       // N^2 x N^2 on H_B (x) H_A
};

// Kraus operators of the map R^{BA} -> R~^{BA} induced by a resource set.
class LambdaMap {
 public:
  LambdaMap(std::size_t n, std::vector<LambdaOperator> ops);

  std::size_t n() const { return n_; }
  const std::vector<LambdaOperator>& ops() const { return ops_; }

  // Operator for (outcome, k, l, component), throws if absent.
  const ComplexMatrix& at(std::size_t outcome, std::size_t k, std::size_t l,
                          std::size_t component = 0) const;

  ComplexMatrix kraus_sum() const;

 private:
  std::size_t n_;
  std::vector<LambdaOperator> ops_;
};

LambdaMap lambda_map(const ControlResources& res);

ChoiState apply_lambda(const LambdaMap& lm, const ChoiState& r, const Tolerances& tol = {});

enum class TraceKind { preserving, decreasing, increasing };

struct TraceCharacter {
  TraceKind kind;
  ComplexMatrix kraus_sum;  // sum Lambda^dag Lambda
  double min_eigenvalue;
  double max_eigenvalue;
  bool within_ancilla_bound;  // max_eigenvalue <= dim_a + eps_tp
};

TraceCharacter trace_character(const LambdaMap& lm, std::size_t dim_a,
                               const Tolerances& tol = {});

std::string to_string(TraceKind kind);

struct RelationCheck {
  std::string relation;
  std::string side;     // "A" or "B"
  std::size_t outcome;  // meaningless for relations summed over outcomes
  double max_violation;
  bool pass;
};

struct ResourceReport {
  std::vector<RelationCheck> checks;
  bool deterministic;

  bool passes(std::string_view relation) const;
  double worst(std::string_view relation) const;
};

// Projector relations (hermiticity and idempotence of the alpha/beta blocks),
// unitarity sums of the a/b blocks, their transposed forms, and the summed
// completeness (sender) and bistochastic relations over outcomes.
ResourceReport check_resource_relations(const ControlResources& res,
                                        const Tolerances& tol = {});

// sum_i p_i eps^B_i o eps o eps^A_i.
Channel separable_composition(std::span<const double> weights,
                              std::span<const Channel> sender,
                              std::span<const Channel> receiver, const Channel& ch,
                              const Tolerances& tol = {});

}  // namespace chanforge
