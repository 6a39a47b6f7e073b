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

#include <gtest/gtest.h>

#include <cmath>

#include "chanforge/channels.hpp"
#include "chanforge/protocols.hpp"
#include "chanforge/random.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace chanforge {
namespace {

ComplexMatrix proj(std::size_t i, std::size_t j, std::size_t n = 2) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

ControlResources trivial(std::size_t n) {
  LocalOutcome o{identity(n), identity(n), identity(n), identity(n), {}, "id"};
  return ControlResources(n, Ancilla::none(), {o});
}

TEST(Resources, RejectInvalidOperators) {
  LocalOutcome o{identity(2), identity(2), identity(2), identity(2), {}, ""};
  o.u_aa = 2.0 * identity(2);
  EXPECT_THROW(ControlResources(2, Ancilla::none(), {o}), ValueError);
  o.u_aa = identity(2);
  o.pi_aa = 0.5 * identity(2);
  EXPECT_THROW(ControlResources(2, Ancilla::none(), {o}), ValueError);
  o.pi_aa = identity(3);
  EXPECT_THROW(ControlResources(2, Ancilla::none(), {o}), DimensionError);
}

TEST(Resources, DeterministicFlag) {
  EXPECT_TRUE(trivial(2).deterministic());
  const double h = 1 / std::sqrt(2.0);
  const double mu[2] = {h, h};
  EXPECT_TRUE(qt_resources(2, mu).deterministic());
  EXPECT_FALSE(bitflip_resources(0.5).deterministic());
}

TEST(Ancilla, SchmidtRejectsBadCoefficients) {
  const double bad[2] = {0.5, 0.5};
  EXPECT_THROW(Ancilla::schmidt(bad), ValueError);
  const double w[2] = {0.5, 0.4};
  const PureState s[2] = {bell_state(2, 0), bell_state(2, 1)};
  EXPECT_THROW(Ancilla::mixture(w, s, 2, 2), ValueError);
}

TEST(Blocks, IdentityGivesDeltaBlocks) {
  const AncillaBlocks b(identity(6), 3, 2);
  EXPECT_LT(max_abs_diff(b.at(0, 0), identity(3)), 1e-15);
  EXPECT_LT(max_abs(b.at(0, 1)), 1e-15);
  EXPECT_THROW(b.at(2, 0), DimensionError);
}

TEST(Blocks, SwapGivesTransposedKetBras) {
  const AncillaBlocks b(swap_operator(3, 3), 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(max_abs_diff(b.at(i, j), proj(j, i, 3)), 1e-15);
}

TEST(Blocks, BitFlipProtocolMatchesPaperList) {
  const double mu = 0.4;
  const double gamma = mu / std::sqrt(1 - mu * mu);
  const auto res = bitflip_resources(mu);
  // Sender blocks, outcome eta uses extended index 2 * eta.
  const ComplexMatrix a_expected[2][2][2] = {{{proj(0, 0), proj(1, 1)}, {ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)}},
                                             {{ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)}, {proj(1, 1), proj(0, 0)}}};
  for (std::size_t eta = 0; eta < 2; ++eta) {
    const auto a = blocks_A(res, 2 * eta);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        EXPECT_LT(max_abs_diff(a.at(i, j), a_expected[eta][i][j]), 1e-14) << eta << i << j;
  }
  ComplexMatrix b_expected[4][2][2];
  for (auto& o : b_expected)
    for (auto& r : o)
      for (auto& m : r) m = ComplexMatrix::Zero(2, 2);
  b_expected[0][0][0] = proj(0, 0);
  b_expected[0][0][1] = gamma * proj(1, 1);
  b_expected[1][1][0] = proj(0, 1);
  b_expected[1][1][1] = gamma * proj(1, 0);
  b_expected[2][0][0] = proj(1, 0);
  b_expected[2][0][1] = gamma * proj(0, 1);
  b_expected[3][1][0] = proj(1, 1);
  b_expected[3][1][1] = gamma * proj(0, 0);
  for (std::size_t o = 0; o < 4; ++o) {
    const auto b = blocks_B(res, o);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        EXPECT_LT(max_abs_diff(b.at(i, j), b_expected[o][i][j]), 1e-14) << o << i << j;
  }
}

TEST(ModifiedChannel, TrivialResourcesKeepChannel) {
  const auto ch = amplitude_damping(0.3);
  const auto out = modified_channel(ch, trivial(2));
  EXPECT_LT(max_abs_diff(choi_of(out).matrix(), choi_of(ch).matrix()), 1e-14);
}

TEST(ModifiedChannel, MatchesDensityMatrixOracle) {
  Rng rng(101);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = gen::pick(rng, 2, 3);
    const auto ch = random_channel(n, gen::pick(rng, 1, n * n), rng);
    gen::ResourceOptions opt;
    opt.ancilla = t % 3 == 0 ? gen::AncillaKind::product : gen::AncillaKind::entangled;
    const auto res = gen::resources(n, rng, opt);
    const auto rho = random_density(n, rng);
    const auto mod = modified_channel(ch, res);
    EXPECT_LT(max_abs_diff(chanforge::apply(mod, rho), oracle::controlled_output(ch.kraus(), res, rho)), 1e-12) << t;
  }
}

TEST(ModifiedChannel, MixedAncillaIsLinear) {
  Rng rng(102);
  const auto ch = random_channel(2, 3, rng);
  const double w[2] = {0.3, 0.7};
  const PureState s[2] = {random_pure_state(4, rng), random_pure_state(4, rng)};
  // Same local operations on a two-qubit ancilla.
  LocalOutcome o{tensor(random_unitary(2, rng), identity(2)) * cnot(), identity(4),
                 random_unitary(4, rng), identity(4), {}, "x"};
  const ControlResources mixed(2, Ancilla::mixture(w, s, 2, 2), {o});
  const ControlResources p0(2, Ancilla::pure(s[0], 2, 2), {o});
  const ControlResources p1(2, Ancilla::pure(s[1], 2, 2), {o});
  const auto rho = random_density(2, rng);
  const ComplexMatrix expected = w[0] * chanforge::apply(modified_channel(ch, p0), rho) + w[1] * chanforge::apply(modified_channel(ch, p1), rho);
  EXPECT_LT(max_abs_diff(chanforge::apply(modified_channel(ch, mixed), rho), expected), 1e-13);
  EXPECT_LT(max_abs_diff(chanforge::apply(modified_channel(ch, mixed), rho), oracle::controlled_output(ch.kraus(), mixed, rho)), 1e-13);
}

TEST(ModifiedChannel, ProductAncillaComposesLocalChannels) {
  Rng rng(103);
  const auto ch = random_channel(2, 2, rng);
  const auto ua = random_unitary(4, rng);
  const auto ub = random_unitary(4, rng);
  ComplexVector zero = ComplexVector::Zero(2);
  zero(0) = 1.0;
  const PureState prod(tensor(zero, zero));
  LocalOutcome o{ua, identity(4), ub, identity(4), {}, ""};
  const ControlResources res(2, Ancilla::pure(prod, 2, 2), {o});
  // Local channels: eps^A has Kraus <k|U|0>, eps^B likewise.
  std::vector<ComplexMatrix> ka, kb;
  const AncillaBlocks ba(ua, 2, 2), bb(ub, 2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    ka.push_back(ba.at(k, 0));
    kb.push_back(bb.at(k, 0));
  }
  const Channel ea(ka), eb(kb);
  const auto rho = random_density(2, rng);
  EXPECT_LT(max_abs_diff(chanforge::apply(modified_channel(ch, res), rho), chanforge::apply(eb, chanforge::apply(ch, chanforge::apply(ea, rho)))), 1e-13);
}

TEST(Lambda, TrivialResourcesGiveIdentity) {
  const auto lm = lambda_map(trivial(3));
  ASSERT_EQ(lm.ops().size(), 1u);
  EXPECT_LT(max_abs_diff(lm.ops()[0].op, identity(9)), 1e-15);
}

TEST(Lambda, CommutesWithChoiIsomorphism) {
  Rng rng(104);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = gen::pick(rng, 2, 3);
    const auto ch = random_channel(n, gen::pick(rng, 1, n * n), rng);
    const auto res = gen::resources(n, rng);
    const auto lhs = choi_of(modified_channel(ch, res)).matrix();
    const auto rhs = apply_lambda(lambda_map(res), choi_of(ch)).matrix();
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12) << t;
  }
}

TEST(Lambda, BitFlipOperatorsMatchClosedForms) {
  const double mu = 0.3;
  const auto lm = lambda_map(bitflip_resources(mu));
  const ComplexMatrix l00 = mu * (tensor(proj(0, 0), proj(0, 0)) + tensor(proj(1, 1), proj(1, 1)));
  const ComplexMatrix l01 = mu * (tensor(proj(0, 1), proj(0, 0)) + tensor(proj(1, 0), proj(1, 1)));
  EXPECT_LT(max_abs_diff(lm.at(0, 0, 0), l00), 1e-14);
  EXPECT_LT(max_abs_diff(lm.at(1, 1, 0), l01), 1e-14);
  EXPECT_LT(max_abs_diff(lm.at(3, 1, 1), l00), 1e-14);
  EXPECT_LT(max_abs_diff(lm.at(2, 0, 1), l01), 1e-14);
  for (const auto& o : lm.ops()) {
    const bool listed = (o.outcome == 0 && o.k == 0 && o.l == 0) || (o.outcome == 1 && o.k == 1 && o.l == 0) ||
                        (o.outcome == 2 && o.k == 0 && o.l == 1) || (o.outcome == 3 && o.k == 1 && o.l == 1);
    if (!listed) EXPECT_LT(max_abs(o.op), 1e-14) << o.outcome << o.k << o.l;
  }
}

TEST(Lambda, ApplyOnBitFlipChoiGivesScaledBellState) {
  const double mu = 0.45;
  for (double p : {0.0, 0.2, 1.0}) {
    const auto out = apply_lambda(lambda_map(bitflip_resources(mu)), choi_of(bit_flip(p)));
    EXPECT_LT(max_abs_diff(out.matrix(), 2 * mu * mu * bell_projector(2)), 1e-14);
  }
}

TEST(Lambda, ApplyRejectsDimensionMismatch) {
  EXPECT_THROW(apply_lambda(lambda_map(trivial(2)), choi_of(identity_channel(3))), DimensionError);
}

TEST(TraceCharacter, QtIsPreserving) {
  for (std::size_t n : {2u, 3u}) {
    const std::vector<double> mu(n, 1 / std::sqrt(static_cast<double>(n)));
    const auto tc = trace_character(lambda_map(qt_resources(n, mu)), n);
    EXPECT_EQ(tc.kind, TraceKind::preserving);
    EXPECT_LT(max_abs_diff(tc.kraus_sum, identity(n * n)), 1e-13);
  }
}

ControlResources swap_projector(std::span<const double> mu) {
  const std::size_t n = mu.size();
  std::vector<LocalOutcome> outs;
  for (std::size_t e = 0; e < n; ++e) {
    outs.push_back({swap_operator(n, n), tensor(proj(e, e, n), identity(n)), identity(n * n), identity(n * n), {}, ""});
  }
  return ControlResources(n, Ancilla::schmidt(mu), std::move(outs));
}

TEST(TraceCharacter, SwapProjectorConstructionMatchesClosedForm) {
  const double mu[3] = {0.8, 0.6 * 0.6, 0.6 * 0.8};
  const auto tc = trace_character(lambda_map(swap_projector(mu)), 3);
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) diag(i, i) = mu[i] * mu[i];
  EXPECT_LT(max_abs_diff(tc.kraus_sum, 3.0 * tensor(identity(3), diag)), 1e-13);
  EXPECT_EQ(tc.kind, TraceKind::increasing);
  EXPECT_GT(tc.max_eigenvalue, 1.0);
  EXPECT_TRUE(tc.within_ancilla_bound);
}

TEST(TraceCharacter, ProductAncillaRespectsBound) {
  Rng rng(105);
  for (int t = 0; t < 50; ++t) {
    const auto res = gen::resources(2, rng, {gen::AncillaKind::product, false, true});
    const auto tc = trace_character(lambda_map(res), res.dim_a());
    EXPECT_TRUE(tc.within_ancilla_bound) << tc.max_eigenvalue << " dim_a " << res.dim_a();
  }
}

TEST(TraceCharacter, BistochasticSenderIsPreserving) {
  Rng rng(106);
  for (int t = 0; t < 20; ++t) {
    const auto res = gen::resources(2, rng, {gen::AncillaKind::entangled, true, false});
    const auto rep = check_resource_relations(res);
    EXPECT_TRUE(rep.passes("sender_bistochastic")) << rep.worst("sender_bistochastic");
    EXPECT_EQ(trace_character(lambda_map(res), res.dim_a()).kind, TraceKind::preserving);
  }
}

TEST(TraceCharacter, FilterMakesItDecreasing) {
  const auto tc = trace_character(lambda_map(bitflip_resources(0.3)), 2);
  EXPECT_EQ(tc.kind, TraceKind::decreasing);
  EXPECT_EQ(to_string(tc.kind), "decreasing");
}

TEST(Relations, QtPassesEverything) {
  const double h = 1 / std::sqrt(2.0);
  const double mu[2] = {h, h};
  const auto rep = check_resource_relations(qt_resources(2, mu));
  EXPECT_TRUE(rep.deterministic);
  for (const auto& c : rep.checks) {
    // The receiver unitary contains a SWAP, whose partial transpose is not
    // unitary, so only the transposed relation on B fails.
    const bool expected = !(c.relation == "unitary_blocks_transposed" && c.side == "B");
    EXPECT_EQ(c.pass, expected) << c.relation << " " << c.side << " " << c.outcome << " " << c.max_violation;
  }
}

TEST(Relations, RandomUnitariesSatisfyUnitarity) {
  Rng rng(107);
  for (int t = 0; t < 20; ++t) {
    const auto res = gen::resources(2, rng);
    const auto rep = check_resource_relations(res);
    EXPECT_TRUE(rep.passes("unitary_blocks"));
    EXPECT_TRUE(rep.passes("projector_hermitian"));
    EXPECT_TRUE(rep.passes("projector_idempotent"));
    EXPECT_TRUE(rep.passes("sender_complete"));
  }
}

// The transposed block relation holds for product and controlled unitaries
// but not for entangling unitaries in general (SWAP is a counterexample).
TEST(Relations, TransposedUnitarityDependsOnStructure) {
  Rng rng(108);
  auto check = [](const ComplexMatrix& u) {
    LocalOutcome o{u, identity(4), identity(4), identity(4), {}, ""};
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = 1.0;
    return check_resource_relations(ControlResources(2, Ancilla::pure(PureState(v), 2, 2), {o}))
        .passes("unitary_blocks_transposed");
  };
  EXPECT_TRUE(check(tensor(random_unitary(2, rng), random_unitary(2, rng))));
  EXPECT_TRUE(check(cnot()));
  EXPECT_FALSE(check(swap_operator(2, 2)));
}

TEST(Relations, BitFlipIsProbabilistic) {
  EXPECT_FALSE(check_resource_relations(bitflip_resources(0.5)).deterministic);
}

TEST(Separable, MatchesClassicallyCorrelatedResources) {
  Rng rng(109);
  const auto ch = random_channel(2, 2, rng);
  const double w[2] = {0.35, 0.65};
  const ComplexMatrix v[2] = {random_unitary(2, rng), random_unitary(2, rng)};
  const ComplexMatrix u[2] = {random_unitary(2, rng), random_unitary(2, rng)};
  const Channel sender[2] = {unitary_channel(v[0]), unitary_channel(v[1])};
  const Channel receiver[2] = {unitary_channel(u[0]), unitary_channel(u[1])};
  const auto sep = separable_composition(w, sender, receiver, ch);

  const ComplexMatrix ua = tensor(v[0], proj(0, 0)) + tensor(v[1], proj(1, 1));
  const ComplexMatrix ub = tensor(u[0], proj(0, 0)) + tensor(u[1], proj(1, 1));
  ComplexVector s0 = ComplexVector::Zero(4), s1 = ComplexVector::Zero(4);
  s0(0) = 1.0;
  s1(3) = 1.0;
  const PureState states[2] = {PureState(s0), PureState(s1)};
  LocalOutcome o{ua, identity(4), ub, identity(4), {}, ""};
  const ControlResources res(2, Ancilla::mixture(w, states, 2, 2), {o});
  EXPECT_LT(max_abs_diff(choi_of(sep).matrix(), choi_of(modified_channel(ch, res)).matrix()), 1e-13);
}

TEST(Separable, SingleIdentityTermKeepsChannel) {
  const auto ch = phase_damping(0.4);
  const double w[1] = {1.0};
  const Channel id[1] = {identity_channel(2)};
  EXPECT_LT(max_abs_diff(choi_of(separable_composition(w, id, id, ch)).matrix(), choi_of(ch).matrix()), 1e-15);
  const double bad[1] = {0.5};
  EXPECT_THROW(separable_composition(bad, id, id, ch), ValueError);
}

}  // namespace
}  // namespace chanforge
