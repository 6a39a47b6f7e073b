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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chanforge/channels.hpp"
#include "chanforge/complexity.hpp"
#include "chanforge/control.hpp"
#include "chanforge/krausmin.hpp"
#include "chanforge/protocols.hpp"
#include "chanforge/random.hpp"
#include "chanforge/scenario.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace {

using namespace chanforge;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> random_schmidt(std::size_t n, Rng& rng) {
  std::vector<double> mu(n);
  double s = 0.0;
  for (auto& m : mu) {
    m = gen::uniform(rng, 0.0, 1.0);
    s += m * m;
  }
  for (auto& m : mu) m /= std::sqrt(s);
  return mu;
}

Tolerances rank_tol() {
  Tolerances t;
  t.eps_rank = 1e-10;
  return t;
}

Verdict complexity_table() {
  Verdict v;
  const auto tol = rank_tol();
  struct Row {
    const char* name;
    std::vector<Channel> members;
    std::size_t expected;
  };
  const std::vector<Row> rows = {
      {"identity", {identity_channel(2)}, 0},
      {"bit_flip", {bit_flip(0.3)}, 2},
      {"phase_flip", {phase_flip(0.2)}, 2},
      {"amplitude_damping", {amplitude_damping(0.3)}, 2},
      {"phase_damping", {phase_damping(0.3)}, 2},
      {"depolarizing", {depolarizing(0.5)}, 4},
      {"bit+phase", {bit_flip(0.3), phase_flip(0.2)}, 3},
      {"depolarizing+phase", {depolarizing(0.5), phase_flip(0.2)}, 4},
      {"bit+amplitude_damping", {bit_flip(0.3), amplitude_damping(0.3)}, 4},
  };
  std::ostringstream os;
  for (const auto& r : rows) {
    const std::size_t chi = complexity(ChannelFamily(r.members), tol);
    v.require(chi == r.expected, std::string(r.name) + " gave " + std::to_string(chi));
    os << (os.tellp() > 0 ? " " : "") << r.name << "=" << chi;
  }
  if (v.pass) v.detail = os.str();
  return v;
}

Verdict qt_identity() {
  Verdict v;
  Rng rng(2024);
  double worst = 0.0;
  for (std::size_t n : {2u, 3u}) {
    const std::vector<double> mu(n, 1 / std::sqrt(static_cast<double>(n)));
    const auto res = qt_resources(n, mu);
    const auto tc = trace_character(lambda_map(res), res.dim_a());
    v.require(tc.kind == TraceKind::preserving, "lambda not trace preserving for N=" + std::to_string(n));
    for (int t = 0; t < 20; ++t) {
      const auto ch = random_channel(n, n * n, rng);
      const double d = max_abs_diff(choi_of(modified_channel(ch, res)).matrix(), bell_projector(n));
      worst = std::max(worst, d);
      v.require(d <= 1e-10, "Choi distance " + fmt(d));
    }
  }
  if (v.pass) v.detail = "40 channels, worst |Choi - Psi0|max " + fmt(worst) + ", lambda preserving";
  return v;
}

Verdict partial_qt() {
  Verdict v;
  Rng rng(77);
  double worst = 0.0, worst_p = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = t % 2 == 0 ? 2 : 3;
    const auto mu = random_schmidt(n, rng);
    const auto ch = random_channel(n, gen::pick(rng, 1, n * n), rng);
    const auto closed = qt_channel(mu);
    const double d = max_abs_diff(choi_of(modified_channel(ch, qt_resources(n, mu))).matrix(), choi_of(closed).matrix());
    worst = std::max(worst, d);
    v.require(d <= 1e-10, "closed form vs simulation " + fmt(d));
    v.require(complexity(closed) <= n, "complexity exceeds N");
    if (n == 2) {
      ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
      ComplexVector minus(2);
      minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
      const ComplexMatrix out = oracle::controlled_output(ch.kraus(), qt_resources(2, mu), plus);
      const double measured = (minus.adjoint() * out * minus)(0, 0).real();
      const double expected = 0.5 - mu[0] * std::sqrt(1 - mu[0] * mu[0]);
      worst_p = std::max(worst_p, std::abs(measured - expected));
      v.require(std::abs(measured - expected) <= 1e-12, "phase-flip probability off by " + fmt(measured - expected));
      v.require(std::abs(p_mu(mu[0]) - expected) <= 1e-12, "p_mu mismatch");
    }
  }
  if (v.pass) v.detail = "50 mu, worst Choi gap " + fmt(worst) + ", worst p_mu gap " + fmt(worst_p);
  return v;
}

Verdict bitflip() {
  Verdict v;
  double worst = 0.0;
  for (double mu : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 1 / std::sqrt(2.0)}) {
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
      const auto out = bitflip_correction(mu, p);
      v.require(std::abs(out.success_prob - 2 * mu * mu) <= 1e-12, "success probability at mu=" + fmt(mu));
      const double d = max_abs_diff(out.choi_after.matrix() / out.success_prob, bell_projector(2));
      worst = std::max(worst, d);
      v.require(d <= 1e-10, "post-success Choi at mu=" + fmt(mu) + " p=" + fmt(p));
    }
    // Closed forms of the four nonzero Lambda operators.
    const auto lm = lambda_map(bitflip_resources(mu));
    ComplexMatrix k00 = ComplexMatrix::Zero(4, 4), k01 = ComplexMatrix::Zero(4, 4);
    // mu (|0><0| x |0><0| + |1><1| x |1><1|) and mu (|0><1| x |0><0| + |1><0| x |1><1|).
    k00(0, 0) = k00(3, 3) = mu;
    k01(0, 2) = k01(3, 1) = mu;
    const double e = std::max({max_abs_diff(lm.at(0, 0, 0), k00), max_abs_diff(lm.at(3, 1, 1), k00),
                               max_abs_diff(lm.at(1, 1, 0), k01), max_abs_diff(lm.at(2, 0, 1), k01)});
    v.require(e <= 1e-12, "Lambda closed form off by " + fmt(e));
  }
  if (v.pass) v.detail = "32 grid points, success = 2mu^2, worst normalized Choi gap " + fmt(worst);
  return v;
}

Verdict trace_relations() {
  Verdict v;
  const double mu[3] = {0.8, 0.36, 0.48};
  std::vector<LocalOutcome> outs;
  for (std::size_t e = 0; e < 3; ++e) {
    ComplexMatrix p = ComplexMatrix::Zero(3, 3);
    p(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(e)) = 1.0;
    outs.push_back({swap_operator(3, 3), tensor(p, identity(3)), identity(9), identity(9), {}, ""});
  }
  const ControlResources sp(3, Ancilla::schmidt(mu), outs);
  const auto tc = trace_character(lambda_map(sp), 3);
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) diag(i, i) = mu[i] * mu[i];
  const double eq = max_abs_diff(tc.kraus_sum, 3.0 * tensor(identity(3), diag));
  v.require(eq <= 1e-12, "swap/projector sum off by " + fmt(eq));
  v.require(tc.max_eigenvalue > 1.0 && tc.kind == TraceKind::increasing, "no eigenvalue above 1");

  Rng rng(5150);
  double worst_ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto res = gen::resources(2, rng, {gen::AncillaKind::product, false, true});
    const auto c = trace_character(lambda_map(res), res.dim_a());
    worst_ratio = std::max(worst_ratio, c.max_eigenvalue / static_cast<double>(res.dim_a()));
    v.require(c.within_ancilla_bound, "product-ancilla bound violated");
  }
  for (int t = 0; t < 20; ++t) {
    const auto res = gen::resources(2, rng, {gen::AncillaKind::entangled, true, false});
    v.require(check_resource_relations(res).passes("sender_bistochastic"), "generator not bistochastic");
    v.require(trace_character(lambda_map(res), res.dim_a()).kind == TraceKind::preserving,
              "bistochastic sender not trace preserving");
  }
  if (v.pass) {
    v.detail = "closed form gap " + fmt(eq) + ", max eigenvalue " + fmt(tc.max_eigenvalue) +
               ", worst bound ratio " + fmt(worst_ratio) + ", 20 bistochastic preserving";
  }
  return v;
}

Verdict commutation_square() {
  Verdict v;
  Rng rng(606);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto ch = random_channel(2, gen::pick(rng, 1, 4), rng);
    const auto res = gen::resources(2, rng);
    const double d = max_abs_diff(choi_of(modified_channel(ch, res)).matrix(),
                                  apply_lambda(lambda_map(res), choi_of(ch)).matrix());
    worst = std::max(worst, d);
    v.require(d <= 1e-9, "square fails by " + fmt(d));
  }
  if (v.pass) v.detail = "50 pairs, worst gap " + fmt(worst);
  return v;
}

Verdict appendix() {
  Verdict v;
  Rng rng(7070);
  for (int t = 0; t < 50; ++t) {
    const std::size_t dim = gen::pick(rng, 2, 4);
    const std::size_t indep = gen::pick(rng, 1, dim * dim);
    const std::size_t total = indep + gen::pick(rng, 0, 6);
    std::vector<ComplexMatrix> base, ops;
    for (std::size_t i = 0; i < indep; ++i) base.push_back(random_ginibre(dim, dim, rng));
    const ComplexMatrix iso = random_unitary(total, rng);
    for (std::size_t r = 0; r < total; ++r) {
      ComplexMatrix k = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i < indep; ++i) k += iso(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) * base[i];
      ops.push_back(k);
    }
    const auto reduced = reduce(KrausSet(ops));
    v.require(reduced.size() == oracle::rank(oracle::choi(ops)), "reduced size differs from Choi rank");
  }

  // Maps obeying Lambda_j |r_i> proportional to |psi0> on an R-dim support.
  const std::size_t n = 2;
  const ComplexVector psi0 = bell_state(n, 0).amplitudes();
  std::ostringstream counts;
  for (std::size_t r = 1; r <= 4; ++r) {
    for (int t = 0; t < 5; ++t) {
      const ComplexMatrix basis = random_unitary(4, rng);
      const ComplexMatrix support = basis.leftCols(static_cast<Eigen::Index>(r));
      const ComplexMatrix complement = basis.rightCols(static_cast<Eigen::Index>(4 - r));
      std::vector<ComplexMatrix> ops;
      for (std::size_t j = 0; j < r; ++j) {
        ComplexMatrix k = psi0 * support.col(static_cast<Eigen::Index>(j)).adjoint();
        if (r < 4) k += random_ginibre(4, 4 - r, rng) * complement.adjoint();
        ops.push_back(k);
      }
      const std::size_t extra = gen::pick(rng, 0, 30);
      for (std::size_t e = 0; e < extra; ++e) {
        ComplexMatrix k = gen::uniform(rng) * psi0 * (random_ginibre(1, r, rng) * support.adjoint());
        if (r < 4) k += random_ginibre(4, 4 - r, rng) * complement.adjoint();
        ops.push_back(k);
      }
      const KrausSet ks(ops);
      SupportSubspace s{4, support};
      v.require(constraint_check(ks, s).pass, "constructed map violates its constraints");
      const std::size_t count = reduce(ks).size();
      v.require(count >= r && count <= upper_bound(n, r),
                "R=" + std::to_string(r) + " count " + std::to_string(count) + " outside bounds");
      if (t == 0) counts << (counts.tellp() > 0 ? " " : "") << "R=" << r << ":" << count << "<=" << upper_bound(n, r);
    }
  }
  v.require(upper_bound(2, 2) == 10, "upper_bound(2,2) != 10");
  if (v.pass) v.detail = "50 reductions match Choi rank; " + counts.str();
  return v;
}

Verdict qecc() {
  Verdict v;
  double worst = 0.0;
  for (double p : {0.0, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.45, 0.5, 0.6, 0.8, 1.0}) {
    const double q = phase_flip_code_logical_error(phase_flip(p));
    const double brute = oracle::majority_failure(p);
    worst = std::max({worst, std::abs(q - brute), std::abs(q - (3 * p * p - 2 * p * p * p))});
    v.require(std::abs(q - brute) <= 1e-12 && std::abs(q - (3 * p * p - 2 * p * p * p)) <= 1e-12,
              "logical error at p=" + fmt(p));
    const bool helps = q < p - 1e-12;
    const bool expected = p > 0.0 && p < 0.5;
    v.require(helps == expected, "coding benefit wrong at p=" + fmt(p));
  }
  for (double mu : {0.05, 0.2, 0.4, 0.6, 1 / std::sqrt(2.0)}) {
    ComplexVector plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const auto r = qecc_phase_flip_demo(mu, PureState(plus));
    v.require(std::abs(r.p - p_mu(mu)) <= 1e-12, "teleportation error rate");
    v.require(r.coding_helps == (r.p > 1e-12 && r.p < 0.5), "demo coding benefit");
  }
  if (v.pass) v.detail = "12 p values, worst gap " + fmt(worst) + ", helps iff 0 < p < 1/2";
  return v;
}

Verdict determinism() {
  Verdict v;
  for (const auto& name : demo_names()) {
    const auto s = demo_scenario(name);
    const auto a = report_to_json(run_scenario(s)).dump(2);
    const auto b = report_to_json(run_scenario(s)).dump(2);
    v.require(a == b, "demo " + name + " differs between runs");
  }
  const auto s = nlohmann::json::parse(R"({"command":"theorem1","N":3,"trials":3,"seed":12345})");
  v.require(report_to_json(run_scenario(s)).dump(2) == report_to_json(run_scenario(s)).dump(2),
            "seeded theorem1 differs between runs");
  if (v.pass) v.detail = std::to_string(demo_names().size() + 1) + " scenarios byte-identical";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
    double max_seconds;  // 0 means no limit
  };
  const std::vector<Criterion> criteria = {
      {1, "complexity table", complexity_table, 1.0},
      {2, "teleportation gives the identity", qt_identity, 10.0},
      {3, "partial-entanglement teleportation", partial_qt, 0.0},
      {4, "bit-flip correction", bitflip, 0.0},
      {5, "trace relations", trace_relations, 0.0},
      {6, "commutation square", commutation_square, 0.0},
      {7, "Kraus reduction and bounds", appendix, 0.0},
      {8, "phase-flip code", qecc, 0.0},
      {9, "determinism", determinism, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.max_seconds > 0.0 && secs >= c.max_seconds) {
      v.pass = false;
      v.detail += " (too slow)";
    }
    std::printf("%s criterion %d %s: %s [%.3f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str(), secs);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
