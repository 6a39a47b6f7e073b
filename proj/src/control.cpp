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

#include "chanforge/control.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chanforge {

namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

void require_square(const ComplexMatrix& m, std::size_t dim, const std::string& what) {
  if (m.rows() != idx(dim) || m.cols() != idx(dim)) {
    throw DimensionError(what + " has shape " + shape_string(m) + ", expected " +
                         std::to_string(dim) + "x" + std::to_string(dim));
  }
}

ComplexMatrix coefficient_matrix(const PureState& psi, std::size_t dim_a, std::size_t dim_b) {
  if (psi.dim() != dim_a * dim_b) {
    throw DimensionError("ancilla state of dimension " + std::to_string(psi.dim()) +
                         " does not factor as " + std::to_string(dim_a) + " x " +
                         std::to_string(dim_b));
  }
  ComplexMatrix c(idx(dim_a), idx(dim_b));
  for (std::size_t j = 0; j < dim_a; ++j) {
    for (std::size_t k = 0; k < dim_b; ++k) c(idx(j), idx(k)) = psi.amplitudes()(idx(j * dim_b + k));
  }
  return c;
}

// Largest deviation of sum_k f(i,k,j) from delta_ij I over all (i, j).
template <typename Term>
double delta_sum_violation(std::size_t dim_anc, std::size_t dim_sys, Term term) {
  double worst = 0.0;
  const auto id = identity(dim_sys);
  for (std::size_t i = 0; i < dim_anc; ++i) {
    for (std::size_t j = 0; j < dim_anc; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(idx(dim_sys), idx(dim_sys));
      for (std::size_t k = 0; k < dim_anc; ++k) s += term(i, j, k);
      if (i == j) s -= id;
      worst = std::max(worst, max_abs(s));
    }
  }
  return worst;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ancilla

Ancilla::Ancilla(std::size_t dim_a, std::size_t dim_b, std::vector<Component> components)
    : dim_a_(dim_a), dim_b_(dim_b), components_(std::move(components)) {}

Ancilla Ancilla::schmidt(std::span<const double> mu) {
  if (mu.empty()) throw DimensionError("Schmidt vector is empty");
  double norm2 = 0.0;
  for (double m : mu) {
    if (!(m >= 0.0)) throw ValueError("Schmidt coefficients must be nonnegative");
    norm2 += m * m;
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw ValueError("Schmidt coefficients must satisfy sum mu^2 = 1, got " +
                     std::to_string(norm2));
  }
  const std::size_t d = mu.size();
  ComplexMatrix c = ComplexMatrix::Zero(idx(d), idx(d));
  for (std::size_t k = 0; k < d; ++k) c(idx(k), idx(k)) = mu[k];
  return Ancilla(d, d, {{1.0, std::move(c)}});
}

Ancilla Ancilla::pure(const PureState& psi, std::size_t dim_a, std::size_t dim_b) {
  return Ancilla(dim_a, dim_b, {{1.0, coefficient_matrix(psi, dim_a, dim_b)}});
}

Ancilla Ancilla::mixture(std::span<const double> weights, std::span<const PureState> states,
                         std::size_t dim_a, std::size_t dim_b) {
  if (weights.size() != states.size() || weights.empty()) {
    throw DimensionError("ancilla mixture needs one weight per state");
  }
  double total = 0.0;
  std::vector<Component> comps;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw ValueError("mixture weights must be nonnegative");
    total += weights[i];
    comps.push_back({weights[i], coefficient_matrix(states[i], dim_a, dim_b)});
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValueError("mixture weights must sum to 1");
  return Ancilla(dim_a, dim_b, std::move(comps));
}

Ancilla Ancilla::none() { return Ancilla(1, 1, {{1.0, ComplexMatrix::Ones(1, 1)}}); }

ComplexMatrix Ancilla::density() const {
  const auto d = idx(dim_a_ * dim_b_);
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (const auto& c : components_) {
    ComplexVector v(d);
    for (std::size_t j = 0; j < dim_a_; ++j) {
      for (std::size_t k = 0; k < dim_b_; ++k) v(idx(j * dim_b_ + k)) = c.coefficients(idx(j), idx(k));
    }
    rho += c.weight * v * v.adjoint();
  }
  return rho;
}

// ---------------------------------------------------------------------------
// ControlResources

ControlResources::ControlResources(std::size_t n, Ancilla ancilla,
                                   std::vector<LocalOutcome> outcomes, const Tolerances& tol)
    : n_(n), ancilla_(std::move(ancilla)), outcomes_(std::move(outcomes)) {
  if (n == 0) throw DimensionError("system dimension must be positive");
  if (outcomes_.empty()) throw DimensionError("resources need at least one outcome");
  const std::size_t da = n * dim_a();
  const std::size_t db = n * dim_b();
  ComplexMatrix pi_sum = ComplexMatrix::Zero(idx(da), idx(da));
  bool receiver_trivial = true;
  for (std::size_t eta = 0; eta < outcomes_.size(); ++eta) {
    auto& o = outcomes_[eta];
    const std::string tag = " (outcome " + std::to_string(eta) + ")";
    require_square(o.u_aa, da, "U_Aa" + tag);
    require_square(o.pi_aa, da, "Pi_Aa" + tag);
    require_square(o.u_bb, db, "U_Bb" + tag);
    require_square(o.pi_bb, db, "Pi_Bb" + tag);
    if (o.filter_b.size() == 0) o.filter_b = identity(n);
    require_square(o.filter_b, n, "filter_B" + tag);
    if (!is_unitary(o.u_aa, tol.eps_eq)) throw ValueError("U_Aa is not unitary" + tag);
    if (!is_unitary(o.u_bb, tol.eps_eq)) throw ValueError("U_Bb is not unitary" + tag);
    if (!is_projector(o.pi_aa, tol.eps_eq)) throw ValueError("Pi_Aa is not a projector" + tag);
    if (!is_projector(o.pi_bb, tol.eps_eq)) throw ValueError("Pi_Bb is not a projector" + tag);
    const auto feig = eigh(o.filter_b.adjoint() * o.filter_b, tol);
    if (feig.values(0) > 1.0 + tol.eps_tp) throw ValueError("filter_B is not contractive" + tag);
    pi_sum += o.pi_aa;
    receiver_trivial = receiver_trivial &&
                       max_abs(o.pi_bb - identity(db)) <= tol.eps_eq &&
                       max_abs(o.filter_b - identity(n)) <= tol.eps_eq;
  }
  deterministic_ = receiver_trivial && max_abs(pi_sum - identity(da)) <= tol.eps_eq;
}

ComplexMatrix ControlResources::sender_operation(std::size_t eta) const {
  const auto& o = outcomes_.at(eta);
  return o.pi_aa * o.u_aa;
}

ComplexMatrix ControlResources::receiver_operation(std::size_t eta) const {
  const auto& o = outcomes_.at(eta);
  return tensor(o.filter_b, identity(dim_b())) * o.pi_bb * o.u_bb;
}

// ---------------------------------------------------------------------------
// Blocks

AncillaBlocks::AncillaBlocks(const ComplexMatrix& op, std::size_t system_dim,
                             std::size_t ancilla_dim)
    : system_dim_(system_dim), ancilla_dim_(ancilla_dim) {
  require_square(op, system_dim * ancilla_dim, "operator");
  blocks_.reserve(ancilla_dim * ancilla_dim);
  for (std::size_t i = 0; i < ancilla_dim; ++i) {
    for (std::size_t j = 0; j < ancilla_dim; ++j) {
      ComplexMatrix b(idx(system_dim), idx(system_dim));
      for (std::size_t r = 0; r < system_dim; ++r) {
        for (std::size_t c = 0; c < system_dim; ++c) {
          b(idx(r), idx(c)) = op(idx(r * ancilla_dim + i), idx(c * ancilla_dim + j));
        }
      }
      blocks_.push_back(std::move(b));
    }
  }
}

const ComplexMatrix& AncillaBlocks::at(std::size_t i, std::size_t j) const {
  if (i >= ancilla_dim_ || j >= ancilla_dim_) {
    throw DimensionError("block index (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") out of range for ancilla dimension " + std::to_string(ancilla_dim_));
  }
  return blocks_[i * ancilla_dim_ + j];
}

AncillaBlocks blocks_A(const ControlResources& res, std::size_t eta) {
  return AncillaBlocks(res.sender_operation(eta), res.n(), res.dim_a());
}

AncillaBlocks blocks_B(const ControlResources& res, std::size_t eta) {
  return AncillaBlocks(res.receiver_operation(eta), res.n(), res.dim_b());
}

// ---------------------------------------------------------------------------
// Modified channel and lambda map

Channel modified_channel(const Channel& ch, const ControlResources& res, const Tolerances& tol) {
  if (ch.dim() != res.n()) {
    throw DimensionError("channel dimension " + std::to_string(ch.dim()) +
                         " does not match resources for N = " + std::to_string(res.n()));
  }
  const std::size_t da = res.dim_a();
  const std::size_t db = res.dim_b();
  std::vector<ComplexMatrix> kraus;
  for (std::size_t eta = 0; eta < res.outcomes().size(); ++eta) {
    const auto a = blocks_A(res, eta);
    const auto b = blocks_B(res, eta);
    for (const auto& comp : res.ancilla().components()) {
      const double w = std::sqrt(comp.weight);
      for (const auto& e : ch.kraus()) {
        for (std::size_t k = 0; k < db; ++k) {
          for (std::size_t l = 0; l < da; ++l) {
            ComplexMatrix op = ComplexMatrix::Zero(idx(res.n()), idx(res.n()));
            for (std::size_t j = 0; j < da; ++j) {
              for (std::size_t m = 0; m < db; ++m) {
                const Complex c = comp.coefficients(idx(j), idx(m));
                if (c == Complex(0.0)) continue;
                op += c * b.at(k, m) * e * a.at(l, j);
              }
            }
            kraus.push_back(w * op);
          }
        }
      }
    }
  }
  return Channel(std::move(kraus), tol);
}

LambdaMap::LambdaMap(std::size_t n, std::vector<LambdaOperator> ops)
    : n_(n), ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("lambda map has no operators");
  for (const auto& o : ops_) require_square(o.op, n * n, "Lambda operator");
}

const ComplexMatrix& LambdaMap::at(std::size_t outcome, std::size_t k, std::size_t l,
                                   std::size_t component) const {
  for (const auto& o : ops_) {
    if (o.outcome == outcome && o.k == k && o.l == l && o.component == component) return o.op;
  }
  throw DimensionError("no Lambda operator with the requested indices");
}

ComplexMatrix LambdaMap::kraus_sum() const {
  ComplexMatrix s = ComplexMatrix::Zero(idx(n_ * n_), idx(n_ * n_));
  for (const auto& o : ops_) s += o.op.adjoint() * o.op;
  return s;
}

LambdaMap lambda_map(const ControlResources& res) {
  const std::size_t n = res.n();
  const std::size_t da = res.dim_a();
  const std::size_t db = res.dim_b();
  std::vector<LambdaOperator> ops;
  for (std::size_t eta = 0; eta < res.outcomes().size(); ++eta) {
    const auto a = blocks_A(res, eta);
    const auto b = blocks_B(res, eta);
    const auto& comps = res.ancilla().components();
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      const double w = std::sqrt(comps[ci].weight);
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < da; ++l) {
          ComplexMatrix op = ComplexMatrix::Zero(idx(n * n), idx(n * n));
          for (std::size_t j = 0; j < da; ++j) {
            for (std::size_t m = 0; m < db; ++m) {
              const Complex c = comps[ci].coefficients(idx(j), idx(m));
              if (c == Complex(0.0)) continue;
              op += c * tensor(b.at(k, m), ComplexMatrix(a.at(l, j).transpose()));
            }
          }
          ops.push_back({eta, k, l, ci, w * op});
        }
      }
    }
  }
  return LambdaMap(n, std::move(ops));
}

ChoiState apply_lambda(const LambdaMap& lm, const ChoiState& r, const Tolerances& tol) {
  if (r.dim() != lm.n()) {
    throw DimensionError("Choi state of dimension " + std::to_string(r.dim()) +
                         " for a lambda map with N = " + std::to_string(lm.n()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(r.matrix().rows(), r.matrix().cols());
  for (const auto& o : lm.ops()) out += o.op * r.matrix() * o.op.adjoint();
  return ChoiState(r.dim(), std::move(out), tol);
}

TraceCharacter trace_character(const LambdaMap& lm, std::size_t dim_a, const Tolerances& tol) {
  TraceCharacter tc;
  tc.kraus_sum = lm.kraus_sum();
  const auto eig = eigh(tc.kraus_sum, tol);
  tc.max_eigenvalue = eig.values(0);
  tc.min_eigenvalue = eig.values(eig.values.size() - 1);
  tc.within_ancilla_bound = tc.max_eigenvalue <= static_cast<double>(dim_a) + tol.eps_tp;
  if (max_abs(tc.kraus_sum - identity(lm.n() * lm.n())) <= tol.eps_tp) {
    tc.kind = TraceKind::preserving;
  } else if (tc.max_eigenvalue > 1.0 + tol.eps_tp) {
    tc.kind = TraceKind::increasing;
  } else {
    tc.kind = TraceKind::decreasing;
  }
  return tc;
}

std::string to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::preserving: return "preserving";
    case TraceKind::decreasing: return "decreasing";
    case TraceKind::increasing: return "increasing";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Resource relations

bool ResourceReport::passes(std::string_view relation) const {
  bool found = false;
  for (const auto& c : checks) {
    if (c.relation != relation) continue;
    found = true;
    if (!c.pass) return false;
  }
  return found;
}

double ResourceReport::worst(std::string_view relation) const {
  double w = 0.0;
  for (const auto& c : checks) {
    if (c.relation == relation) w = std::max(w, c.max_violation);
  }
  return w;
}

ResourceReport check_resource_relations(const ControlResources& res, const Tolerances& tol) {
  ResourceReport report;
  report.deterministic = res.deterministic();
  const std::size_t n = res.n();

  auto add = [&](std::string relation, std::string side, std::size_t eta, double v) {
    report.checks.push_back({std::move(relation), std::move(side), eta, v, v <= tol.eps_eq});
  };

  auto per_operator = [&](const ComplexMatrix& pi, const ComplexMatrix& u, std::size_t dim_anc,
                          const std::string& side, std::size_t eta) {
    const AncillaBlocks p(pi, n, dim_anc);
    const AncillaBlocks w(u, n, dim_anc);
    double herm = 0.0;
    double idem = 0.0;
    for (std::size_t i = 0; i < dim_anc; ++i) {
      for (std::size_t j = 0; j < dim_anc; ++j) {
        herm = std::max(herm, max_abs(p.at(i, j) - p.at(j, i).adjoint()));
        ComplexMatrix s = ComplexMatrix::Zero(idx(n), idx(n));
        for (std::size_t k = 0; k < dim_anc; ++k) s += p.at(i, k) * p.at(k, j);
        idem = std::max(idem, max_abs(s - p.at(i, j)));
      }
    }
    add("projector_hermitian", side, eta, herm);
    add("projector_idempotent", side, eta, idem);
    const double uni = std::max(
        delta_sum_violation(dim_anc, n, [&](auto i, auto j, auto k) {
          return ComplexMatrix(w.at(i, k) * w.at(j, k).adjoint());
        }),
        delta_sum_violation(dim_anc, n, [&](auto i, auto j, auto k) {
          return ComplexMatrix(w.at(k, i).adjoint() * w.at(k, j));
        }));
    add("unitary_blocks", side, eta, uni);
    const double uni_t = std::max(
        delta_sum_violation(dim_anc, n, [&](auto i, auto j, auto k) {
          return ComplexMatrix(w.at(i, k).adjoint() * w.at(j, k));
        }),
        delta_sum_violation(dim_anc, n, [&](auto i, auto j, auto k) {
          return ComplexMatrix(w.at(k, i) * w.at(k, j).adjoint());
        }));
    add("unitary_blocks_transposed", side, eta, uni_t);
  };

  for (std::size_t eta = 0; eta < res.outcomes().size(); ++eta) {
    const auto& o = res.outcomes()[eta];
    per_operator(o.pi_aa, o.u_aa, res.dim_a(), "A", eta);
    per_operator(o.pi_bb, o.u_bb, res.dim_b(), "B", eta);
  }

  // Sender relations summed over outcomes.
  std::vector<AncillaBlocks> a;
  for (std::size_t eta = 0; eta < res.outcomes().size(); ++eta) a.push_back(blocks_A(res, eta));
  const std::size_t da = res.dim_a();
  auto summed = [&](bool adjoint_first) {
    double worst = 0.0;
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < da; ++j) {
        ComplexMatrix s = ComplexMatrix::Zero(idx(n), idx(n));
        for (const auto& blk : a) {
          for (std::size_t k = 0; k < da; ++k) {
            s += adjoint_first ? ComplexMatrix(blk.at(i, k).adjoint() * blk.at(j, k))
                               : ComplexMatrix(blk.at(i, k) * blk.at(j, k).adjoint());
          }
        }
        if (i == j) s -= identity(n);
        worst = std::max(worst, max_abs(s));
      }
    }
    return worst;
  };
  add("sender_complete", "A", 0, summed(false));
  add("sender_bistochastic", "A", 0, summed(true));
  return report;
}

Channel separable_composition(std::span<const double> weights, std::span<const Channel> sender,
                              std::span<const Channel> receiver, const Channel& ch,
                              const Tolerances& tol) {
  if (weights.size() != sender.size() || weights.size() != receiver.size() || weights.empty()) {
    throw DimensionError("separable_composition: need one weight per sender/receiver pair");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValueError("separable_composition: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValueError("separable_composition: weights must sum to 1");
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (sender[i].dim() != ch.dim() || receiver[i].dim() != ch.dim()) {
      throw DimensionError("separable_composition: component dimension mismatch");
    }
    if (!is_trace_preserving(sender[i], tol) || !is_trace_preserving(receiver[i], tol)) {
      throw ValueError("separable_composition: local operations must be trace-preserving");
    }
    const double w = std::sqrt(weights[i]);
    for (const auto& b : receiver[i].kraus()) {
      for (const auto& e : ch.kraus()) {
        for (const auto& a : sender[i].kraus()) kraus.push_back(w * b * e * a);
      }
    }
  }
  return Channel(std::move(kraus), tol);
}

}  // namespace chanforge
