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

#include "chanforge/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "chanforge/channels.hpp"
#include "chanforge/complexity.hpp"
#include "chanforge/control.hpp"
#include "chanforge/krausmin.hpp"
#include "chanforge/protocols.hpp"
#include "chanforge/random.hpp"

namespace chanforge {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"complexity",   "qt",          "bitflip",
                                         "unitary-shift", "qecc-demo",  "kraus-min",
                                         "fidelity-opt",  "theorem1"};

// Fields that must be present, any one of each group.
const std::map<std::string, std::vector<std::vector<std::string>>> kRequired = {
    {"complexity", {{"families", "family", "channel"}}},
    {"qt", {{"N"}}},
    {"bitflip", {{"mu"}, {"p"}}},
    {"unitary-shift", {{"U_eps"}}},
    {"qecc-demo", {{"mu", "mu_grid"}}},
    {"kraus-min", {{"kraus", "random", "resources"}}},
    {"fidelity-opt", {{"channel"}, {"parametrization"}}},
    {"theorem1", {{"N"}, {"trials"}}},
};

class Context {
 public:
  Context(const json& scenario, Report& report) : scenario_(scenario), report_(report) {}

  const json& scenario() const { return scenario_; }
  const Tolerances& tol() const { return report_.tolerances; }
  std::uint64_t seed() const { return report_.seed; }
  Report& report() { return report_; }

  double number(const char* key) const {
    const auto& v = scenario_.at(key);
    if (!v.is_number()) throw SchemaError(std::string("'") + key + "' must be a number");
    return v.get<double>();
  }

  std::size_t count(const char* key) const {
    const auto& v = scenario_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw SchemaError(std::string("'") + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  void result(std::string name, json value, double tolerance) {
    report_.results.push_back({std::move(name), std::move(value), tolerance});
  }

  void check_close(std::string name, double expected, double actual, double tolerance) {
    const bool pass = std::abs(expected - actual) <= tolerance;
    report_.assertions.push_back({std::move(name), expected, actual, tolerance, pass});
  }

  void check_at_most(std::string name, double bound, double actual, double tolerance) {
    report_.assertions.push_back({std::move(name), bound, actual, tolerance, actual <= bound + tolerance});
  }

  void check_true(std::string name, bool ok) {
    report_.assertions.push_back({std::move(name), 1.0, ok ? 1.0 : 0.0, 0.0, ok});
  }

 private:
  const json& scenario_;
  Report& report_;
};

double choi_distance(const Channel& a, const Channel& b, const Tolerances& tol) {
  return max_abs_diff(choi_of(a, tol).matrix(), choi_of(b, tol).matrix());
}

std::vector<double> schmidt_from(const json& s, std::size_t n) {
  if (s.contains("schmidt")) {
    auto mu = s.at("schmidt").get<std::vector<double>>();
    if (mu.size() != n) throw SchemaError("'schmidt' must have N entries");
    return mu;
  }
  return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

void run_complexity(Context& ctx) {
  struct Entry {
    std::string name;
    json members;
    std::optional<std::size_t> expect;
  };
  std::vector<Entry> entries;
  const auto& s = ctx.scenario();
  if (s.contains("families")) {
    for (const auto& f : s.at("families")) {
      if (!f.contains("members")) throw SchemaError("family entry needs 'members'");
      Entry e{f.value("name", std::string("family")), f.at("members"), std::nullopt};
      if (f.contains("expect")) e.expect = f.at("expect").get<std::size_t>();
      entries.push_back(std::move(e));
    }
  } else if (s.contains("family")) {
    entries.push_back({"family", s.at("family"), std::nullopt});
  } else {
    entries.push_back({channel_label(s.at("channel")), json::array({s.at("channel")}), std::nullopt});
  }

  auto& table = ctx.report().table;
  table.columns = {"family", "chi"};
  for (const auto& e : entries) {
    if (!e.members.is_array() || e.members.empty()) throw SchemaError("family members must be a nonempty array");
    std::vector<Channel> members;
    std::string label = e.name;
    for (const auto& m : e.members) members.push_back(channel_from_json(m, ctx.tol()));
    const std::size_t chi = complexity(ChannelFamily(std::move(members)), ctx.tol());
    const std::size_t n = channel_from_json(e.members[0], ctx.tol()).dim();
    table.rows.push_back({label, chi});
    ctx.result("chi[" + label + "]", chi, ctx.tol().eps_rank);
    ctx.check_at_most("chi_at_most_N2[" + label + "]", static_cast<double>(n * n),
                      static_cast<double>(chi), 0.0);
    if (e.expect) ctx.check_close("chi[" + label + "]", static_cast<double>(*e.expect), static_cast<double>(chi), 0.0);
  }
  if (entries.size() == 1) {
    ctx.result("complexity", table.rows.front()[1], ctx.tol().eps_rank);
  }
}

void run_qt(Context& ctx) {
  const auto& s = ctx.scenario();
  const auto& tol = ctx.tol();
  const std::size_t n = ctx.count("N");
  if (n < 2) throw SchemaError("'N' must be at least 2");

  if (s.contains("mu_grid")) {
    if (n != 2) throw SchemaError("'mu_grid' sweeps are defined for qubits (N = 2)");
    auto& table = ctx.report().table;
    table.columns = {"mu", "p_mu", "fidelity"};
    for (const auto& m : s.at("mu_grid")) {
      const double mu = m.get<double>();
      const double amps[2] = {mu, std::sqrt(std::max(0.0, 1.0 - mu * mu))};
      const double f = cj_fidelity(choi_of(qt_channel(amps, tol), tol));
      table.rows.push_back({mu, p_mu(mu), f});
      ctx.check_close("fidelity_is_1_minus_p_mu[mu=" + json(mu).dump() + "]", 1.0 - p_mu(mu), f, 1e-12);
    }
    return;
  }

  const auto mu = schmidt_from(s, n);
  Rng rng(ctx.seed());
  const Channel ch = s.contains("channel") ? channel_from_json(s.at("channel"), tol)
                                           : random_channel(n, n * n, rng);
  if (ch.dim() != n) throw SchemaError("channel dimension does not match 'N'");
  const ControlResources res = qt_resources(n, mu, tol);
  const Channel modified = modified_channel(ch, res, tol);
  const Channel closed = qt_channel(mu, tol);
  const ChoiState r_after = choi_of(modified, tol);
  const auto tc = trace_character(lambda_map(res), res.dim_a(), tol);
  const std::size_t chi_before = complexity(ch, tol);
  const std::size_t chi_after = complexity(modified, tol);
  const double e2e = choi_distance(modified, closed, tol);
  const double to_ideal = max_abs_diff(r_after.matrix(), bell_projector(n));

  ctx.result("complexity_before", chi_before, tol.eps_rank);
  ctx.result("complexity_after", chi_after, tol.eps_rank);
  ctx.result("end_to_end_vs_closed_form", e2e, tol.eps_eq);
  ctx.result("distance_to_identity", to_ideal, tol.eps_eq);
  ctx.result("cj_fidelity", cj_fidelity(r_after), tol.eps_eq);
  ctx.result("lambda_trace", to_string(tc.kind), tol.eps_tp);
  if (n == 2) ctx.result("p_mu", p_mu(std::min(mu[0], 1.0)), 1e-12);

  ctx.check_close("end_to_end_matches_closed_form", 0.0, e2e, tol.eps_eq);
  ctx.check_at_most("complexity_after_at_most_N", static_cast<double>(n), static_cast<double>(chi_after), 0.0);
  const bool uniform = std::all_of(mu.begin(), mu.end(), [&](double m) {
    return std::abs(m - 1.0 / std::sqrt(static_cast<double>(n))) <= 1e-12;
  });
  if (uniform) {
    ctx.check_close("identity_channel", 0.0, to_ideal, tol.eps_eq);
    ctx.check_close("complexity_after_zero", 0.0, static_cast<double>(chi_after), 0.0);
    ctx.check_true("lambda_trace_preserving", tc.kind == TraceKind::preserving);
  }
}

void run_bitflip(Context& ctx) {
  const auto& tol = ctx.tol();
  const double mu = ctx.number("mu");
  const double p = ctx.number("p");
  const auto out = bitflip_correction(mu, p, tol);
  const double fidelity = out.success_prob > 0.0 ? cj_fidelity(out.choi_after) / out.success_prob : 0.0;
  ctx.result("success_prob", out.success_prob, 1e-12);
  ctx.result("post_success_fidelity", fidelity, tol.eps_eq);
  ctx.result("complexity_before", out.complexity_before, tol.eps_rank);
  ctx.result("complexity_after", out.complexity_after, tol.eps_rank);
  ctx.check_close("success_prob_is_2mu2", 2.0 * mu * mu, out.success_prob, 1e-12);
  ctx.check_close("choi_after_is_2mu2_psi0", 0.0,
                  max_abs_diff(out.choi_after.matrix(), 2.0 * mu * mu * bell_projector(2)), 1e-10);
  if (out.success_prob > 0.0) ctx.check_close("post_success_fidelity", 1.0, fidelity, tol.eps_eq);
  ctx.check_close("complexity_after_zero", 0.0, static_cast<double>(out.complexity_after), 0.0);

  auto& table = ctx.report().table;
  table.columns = {"outcome", "k", "l", "norm"};
  for (const auto& o : out.lambda.ops()) {
    const double norm = o.op.norm();
    if (norm <= tol.eps_eq) continue;
    table.rows.push_back({out.resources.outcomes()[o.outcome].label, o.k, o.l, norm});
  }
}

void run_unitary_shift(Context& ctx) {
  const auto& s = ctx.scenario();
  const auto& tol = ctx.tol();
  const ComplexMatrix u_eps = matrix_from_json(s.at("U_eps"));
  std::optional<ComplexMatrix> u1;
  if (s.contains("U1")) u1 = matrix_from_json(s.at("U1"));
  const auto out = unitary_shift_correction(u_eps, u1, tol);
  const std::size_t n = out.choi_after.dim();
  const double dist = max_abs_diff(out.choi_after.matrix(), bell_projector(n));
  ctx.result("distance_to_identity", dist, tol.eps_eq);
  ctx.result("success_prob", out.success_prob, tol.eps_tp);
  ctx.result("complexity_before", out.complexity_before, tol.eps_rank);
  ctx.result("complexity_after", out.complexity_after, tol.eps_rank);
  ctx.check_close("lambda_maps_to_psi0", 0.0, dist, tol.eps_eq);
  ctx.check_close("deterministic", 1.0, out.success_prob, tol.eps_tp);
  ctx.check_close("complexity_after_zero", 0.0, static_cast<double>(out.complexity_after), 0.0);
}

void run_qecc(Context& ctx) {
  const auto& s = ctx.scenario();
  const auto& tol = ctx.tol();
  std::vector<double> grid;
  if (s.contains("mu_grid")) {
    grid = s.at("mu_grid").get<std::vector<double>>();
  } else {
    grid.push_back(ctx.number("mu"));
  }
  ComplexVector input(2);
  input << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  if (s.contains("input")) input = vector_from_json(s.at("input"));
  const PureState psi = PureState::normalized(input);

  auto& table = ctx.report().table;
  table.columns = {"mu", "p", "logical_error", "coded_fidelity", "uncoded_fidelity", "coding_helps"};
  for (double mu : grid) {
    const auto r = qecc_phase_flip_demo(mu, psi, tol);
    table.rows.push_back({mu, r.p, r.logical_error, r.coded_fidelity, r.uncoded_fidelity, r.coding_helps});
    const std::string tag = "[mu=" + json(mu).dump() + "]";
    ctx.check_close("p_equals_p_mu" + tag, p_mu(mu), r.p, 1e-12);
    ctx.check_close("logical_error_3p2_minus_2p3" + tag,
                    3 * r.p * r.p - 2 * r.p * r.p * r.p, r.logical_error, 1e-12);
    const bool should_help = r.p > tol.eps_eq && r.p < 0.5 - tol.eps_eq;
    ctx.check_true("coding_helps_iff_p_below_half" + tag, r.coding_helps == should_help);
  }
  if (grid.size() == 1) {
    ctx.result("p", table.rows[0][1], 1e-12);
    ctx.result("logical_error", table.rows[0][2], 1e-12);
    ctx.result("coded_fidelity", table.rows[0][3], tol.eps_eq);
    ctx.result("uncoded_fidelity", table.rows[0][4], tol.eps_eq);
  }
}

void run_kraus_min(Context& ctx) {
  const auto& s = ctx.scenario();
  const auto& tol = ctx.tol();
  std::vector<ComplexMatrix> ops;
  if (s.contains("kraus")) {
    for (const auto& m : s.at("kraus")) ops.push_back(matrix_from_json(m));
  } else if (s.contains("random")) {
    const auto& r = s.at("random");
    const std::size_t n = r.at("N").get<std::size_t>();
    const std::size_t independent = r.at("independent").get<std::size_t>();
    const std::size_t total = r.at("total").get<std::size_t>();
    if (independent == 0 || total < independent) throw SchemaError("'random' needs 0 < independent <= total");
    Rng rng(ctx.seed());
    std::vector<ComplexMatrix> base;
    for (std::size_t i = 0; i < independent; ++i) base.push_back(random_ginibre(n * n, n * n, rng));
    // Columns of an isometry mix the independent operators into `total`.
    const ComplexMatrix iso = random_unitary(total, rng).leftCols(static_cast<Eigen::Index>(independent));
    for (std::size_t t = 0; t < total; ++t) {
      ComplexMatrix k = ComplexMatrix::Zero(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n * n));
      for (std::size_t i = 0; i < independent; ++i) {
        k += iso(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) * base[i];
      }
      ops.push_back(std::move(k));
    }
  } else {
    const std::size_t n = s.at("N").get<std::size_t>();
    for (const auto& o : lambda_map(resources_from_json(s.at("resources"), n, tol)).ops()) ops.push_back(o.op);
  }
  const KrausSet ks(std::move(ops));
  const std::size_t minimal = minimal_count(ks, tol);
  const KrausSet reduced = reduce(ks, tol);
  const double change = max_abs_diff(choi_matrix(ks), choi_matrix(reduced));
  ctx.result("input_size", ks.size(), 0.0);
  ctx.result("minimal_count", minimal, tol.eps_rank);
  ctx.result("reduced_size", reduced.size(), tol.eps_rank);
  ctx.result("choi_change", change, tol.eps_eq);
  ctx.check_close("reduced_size_is_minimal", static_cast<double>(minimal), static_cast<double>(reduced.size()), 0.0);
  ctx.check_close("choi_preserved", 0.0, change, tol.eps_eq);
  if (s.contains("bound")) {
    const auto& b = s.at("bound");
    const std::size_t bound = upper_bound(b.at("N").get<std::size_t>(), b.at("R").get<std::size_t>());
    ctx.result("upper_bound", bound, 0.0);
  }
}

ComplexMatrix rotation(const std::string& axis, double angle) {
  ComplexMatrix sigma;
  if (axis == "x") sigma = pauli_x();
  else if (axis == "y") sigma = pauli_y();
  else if (axis == "z") sigma = pauli_z();
  else throw SchemaError("rotation axis must be x, y or z");
  return std::cos(angle / 2) * identity(2) - Complex(0, 1) * std::sin(angle / 2) * sigma;
}

void run_fidelity_opt(Context& ctx) {
  const auto& s = ctx.scenario();
  const auto& tol = ctx.tol();
  const Channel ch = channel_from_json(s.at("channel"), tol);
  if (ch.dim() != 2) throw SchemaError("fidelity-opt parametrizations are qubit families");
  const std::string kind = s.at("parametrization").get<std::string>();
  ResourceFamily family;
  if (kind == "receiver_rotation") {
    const std::string axis = s.value("axis", std::string("z"));
    family = [axis, tol](std::span<const double> u) {
      LocalOutcome o{identity(2), identity(2), rotation(axis, u[0]), identity(2), ComplexMatrix(), "rotation"};
      return ControlResources(2, Ancilla::none(), {o}, tol);
    };
  } else if (kind == "qt_schmidt_angle") {
    family = [tol](std::span<const double> u) {
      const double mu[2] = {std::abs(std::cos(u[0])), std::abs(std::sin(u[0]))};
      return qt_resources(2, mu, tol);
    };
  } else {
    throw SchemaError("unknown parametrization '" + kind + "'");
  }
  std::vector<double> initial = {0.1};
  if (s.contains("initial")) initial = s.at("initial").get<std::vector<double>>();
  if (initial.size() != 1) throw SchemaError("qubit parametrizations take one parameter");
  OptimizerOptions opts;
  if (s.contains("budget")) opts.budget = ctx.count("budget");
  const auto best = optimize_fidelity(ch, family, initial, opts, tol);
  ctx.result("best_fidelity", best.best_fidelity, tol.eps_eq);
  ctx.result("best_params", best.best_params, 0.0);
  ctx.result("evaluations", best.evaluations, 0.0);
}

void run_theorem1(Context& ctx) {
  const auto& tol = ctx.tol();
  const std::size_t n = ctx.count("N");
  const std::size_t trials = ctx.count("trials");
  const auto rep = theorem1_witness(n, trials, ctx.seed(), tol);
  auto& table = ctx.report().table;
  table.columns = {"trial", "chi_before", "chi_after", "choi_distance", "lambda"};
  double worst = 0.0;
  for (std::size_t t = 0; t < rep.trials.size(); ++t) {
    const auto& tr = rep.trials[t];
    table.rows.push_back({t, tr.complexity_before, tr.complexity_after, tr.choi_distance, to_string(tr.lambda_kind)});
    worst = std::max(worst, tr.choi_distance);
  }
  ctx.result("worst_choi_distance", worst, tol.eps_eq);
  ctx.check_true("all_reduced_to_zero", rep.all_reduced);
  ctx.check_close("worst_choi_distance", 0.0, worst, tol.eps_eq);
  if (ctx.scenario().contains("channel")) {
    const auto tr = qt_reduce(channel_from_json(ctx.scenario().at("channel"), tol), tol);
    ctx.result("channel_complexity_before", tr.complexity_before, tol.eps_rank);
    ctx.result("channel_complexity_after", tr.complexity_after, tol.eps_rank);
  }
}

void apply_expectations(Context& ctx) {
  const auto& s = ctx.scenario();
  if (!s.contains("expect")) return;
  const auto& expect = s.at("expect");
  if (!expect.is_object()) throw SchemaError("'expect' must be an object");
  for (const auto& [key, want] : expect.items()) {
    const auto& results = ctx.report().results;
    const auto it = std::find_if(results.begin(), results.end(),
                                 [&](const ResultValue& r) { return r.name == key; });
    if (it == results.end()) throw SchemaError("'expect' names unknown result '" + key + "'");
    if (!it->value.is_number()) throw SchemaError("result '" + key + "' is not numeric");
    double value;
    double tolerance = it->tolerance;
    if (want.is_object()) {
      value = want.at("value").get<double>();
      tolerance = want.value("tolerance", tolerance);
    } else {
      value = want.get<double>();
    }
    ctx.check_close("expect:" + key, value, it->value.get<double>(), tolerance);
  }
}

std::string format_cell(const json& v) {
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_cell(v[i]);
    return out + "]";
  }
  return v.dump();
}

void render(std::ostringstream& os, const std::vector<std::string>& header,
            const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string cell = c < cells.size() ? cells[c] : "";
      os << std::left << std::setw(static_cast<int>(width[c])) << cell;
      if (c + 1 < header.size()) os << "  ";
    }
    os << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : rows) line(r);
}

}  // namespace

bool Report::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

bool Report::operator==(const Report& other) const {
  return report_to_json(*this) == report_to_json(other);
}

json report_to_json(const Report& r) {
  json results = json::array();
  for (const auto& v : r.results) {
    results.push_back({{"name", v.name}, {"value", v.value}, {"tolerance", v.tolerance}});
  }
  json assertions = json::array();
  for (const auto& a : r.assertions) {
    assertions.push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual},
                          {"tolerance", a.tolerance}, {"pass", a.pass}});
  }
  json rows = json::array();
  for (const auto& row : r.table.rows) rows.push_back(row);
  return {{"name", r.name},
          {"command", r.command},
          {"scenario", r.scenario},
          {"seed", r.seed},
          {"tolerances", tolerances_to_json(r.tolerances)},
          {"results", results},
          {"table", {{"columns", r.table.columns}, {"rows", rows}}},
          {"assertions", assertions},
          {"passed", r.passed()}};
}

Report report_from_json(const json& j) {
  Report r;
  r.name = j.at("name").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.scenario = j.at("scenario");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tolerances = tolerances_from_json(j.at("tolerances"));
  for (const auto& v : j.at("results")) {
    r.results.push_back({v.at("name").get<std::string>(), v.at("value"), v.at("tolerance").get<double>()});
  }
  r.table.columns = j.at("table").at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("table").at("rows")) {
    r.table.rows.emplace_back(row.begin(), row.end());
  }
  for (const auto& a : j.at("assertions")) {
    r.assertions.push_back({a.at("name").get<std::string>(), a.at("expected").get<double>(),
                            a.at("actual").get<double>(), a.at("tolerance").get<double>(),
                            a.at("pass").get<bool>()});
  }
  return r;
}

Report run_scenario(const json& scenario, const RunOverrides& overrides) {
  if (!scenario.is_object()) throw SchemaError("scenario must be a JSON object");
  if (!scenario.contains("command") || !scenario.at("command").is_string()) {
    throw SchemaError("scenario needs a string 'command'");
  }
  const std::string command = scenario.at("command").get<std::string>();
  if (!kCommands.contains(command)) throw SchemaError("unknown command '" + command + "'");
  for (const auto& group : kRequired.at(command)) {
    const bool present = std::any_of(group.begin(), group.end(),
                                     [&](const std::string& k) { return scenario.contains(k); });
    if (!present) {
      std::string names;
      for (const auto& k : group) names += (names.empty() ? "'" : " or '") + k + "'";
      throw SchemaError(command + " scenario is missing " + names);
    }
  }

  Report report;
  report.name = scenario.value("name", command);
  report.command = command;
  report.scenario = scenario;
  if (scenario.contains("seed")) report.seed = scenario.at("seed").get<std::uint64_t>();
  if (overrides.seed) report.seed = *overrides.seed;
  if (scenario.contains("tolerances")) report.tolerances = tolerances_from_json(scenario.at("tolerances"));
  if (overrides.eps_rank) report.tolerances.eps_rank = *overrides.eps_rank;
  report.tolerances.validate();

  Context ctx(scenario, report);
  try {
    if (command == "complexity") run_complexity(ctx);
    else if (command == "qt") run_qt(ctx);
    else if (command == "bitflip") run_bitflip(ctx);
    else if (command == "unitary-shift") run_unitary_shift(ctx);
    else if (command == "qecc-demo") run_qecc(ctx);
    else if (command == "kraus-min") run_kraus_min(ctx);
    else if (command == "fidelity-opt") run_fidelity_opt(ctx);
    else run_theorem1(ctx);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("scenario field error: ") + e.what());
  }
  apply_expectations(ctx);
  return report;
}

std::string emit_table(const Report& report) {
  std::ostringstream os;
  os << "# " << report.name << " (" << report.command << ", seed " << report.seed << ")\n";
  if (!report.table.columns.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.table.rows) {
      std::vector<std::string> cells;
      for (const auto& c : r) cells.push_back(format_cell(c));
      rows.push_back(std::move(cells));
    }
    os << '\n';
    render(os, report.table.columns, rows);
  }
  if (!report.results.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.results) {
      rows.push_back({r.name, format_cell(r.value), format_cell(json(r.tolerance))});
    }
    os << '\n';
    render(os, {"result", "value", "tolerance"}, rows);
  }
  if (!report.assertions.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& a : report.assertions) {
      rows.push_back({a.name, format_cell(json(a.expected)), format_cell(json(a.actual)),
                      format_cell(json(a.tolerance)), a.pass ? "PASS" : "FAIL"});
    }
    os << '\n';
    render(os, {"assertion", "expected", "actual", "tolerance", "status"}, rows);
  }
  os << '\n' << (report.passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

std::vector<std::string> demo_names() {
  return {"complexity", "qt", "qt-sweep", "bitflip", "unitary-shift",
          "qecc-demo", "kraus-min", "fidelity-opt", "theorem1"};
}

json demo_scenario(const std::string& name) {
  const double h = 1.0 / std::sqrt(2.0);
  if (name == "complexity") {
    auto ch = [](const char* kind, const char* key, double v) { return json{{"kind", kind}, {key, v}}; };
    return {{"name", "channel complexity table"},
            {"command", "complexity"},
            {"families",
             {{{"name", "identity"}, {"members", {{{"kind", "identity"}}}}, {"expect", 0}},
              {{"name", "bit_flip"}, {"members", {ch("bit_flip", "p", 0.3)}}, {"expect", 2}},
              {{"name", "phase_flip"}, {"members", {ch("phase_flip", "p", 0.2)}}, {"expect", 2}},
              {{"name", "amplitude_damping"}, {"members", {ch("amplitude_damping", "gamma", 0.3)}}, {"expect", 2}},
              {{"name", "phase_damping"}, {"members", {ch("phase_damping", "gamma", 0.3)}}, {"expect", 2}},
              {{"name", "depolarizing"}, {"members", {ch("depolarizing", "p", 0.5)}}, {"expect", 4}},
              {{"name", "bit_flip|phase_flip"},
               {"members", {ch("bit_flip", "p", 0.3), ch("phase_flip", "p", 0.2)}},
               {"expect", 3}},
              {{"name", "depolarizing|phase_flip"},
               {"members", {ch("depolarizing", "p", 0.5), ch("phase_flip", "p", 0.2)}},
               {"expect", 4}},
              {{"name", "bit_flip|amplitude_damping"},
               {"members", {ch("bit_flip", "p", 0.3), ch("amplitude_damping", "gamma", 0.3)}},
               {"expect", 4}}}}};
  }
  if (name == "qt") {
    return {{"name", "teleportation with maximal entanglement"}, {"command", "qt"}, {"N", 2},
            {"schmidt", {h, h}}, {"seed", 7}};
  }
  if (name == "qt-sweep") {
    return {{"name", "teleportation with partial entanglement"}, {"command", "qt"}, {"N", 2},
            {"mu_grid", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, h}}};
  }
  if (name == "bitflip") {
    return {{"name", "probabilistic bit-flip correction"}, {"command", "bitflip"}, {"mu", 0.5}, {"p", 0.3}};
  }
  if (name == "unitary-shift") {
    return {{"name", "unitary shift correction"}, {"command", "unitary-shift"},
            {"U_eps", {{0, 1}, {1, 0}}}};
  }
  if (name == "qecc-demo") {
    return {{"name", "3-qubit phase-flip code over teleportation links"}, {"command", "qecc-demo"},
            {"mu_grid", {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, h}}};
  }
  if (name == "kraus-min") {
    return {{"name", "Kraus set reduction"}, {"command", "kraus-min"},
            {"random", {{"N", 2}, {"independent", 2}, {"total", 6}}},
            {"bound", {{"N", 2}, {"R", 2}}},
            {"expect", {{"reduced_size", 2}, {"upper_bound", 10}}},
            {"seed", 3}};
  }
  if (name == "fidelity-opt") {
    return {{"name", "Schmidt-angle fidelity optimization"}, {"command", "fidelity-opt"},
            {"channel", {{"kind", "depolarizing"}, {"p", 0.5}}},
            {"parametrization", "qt_schmidt_angle"}, {"initial", {0.2}}, {"budget", 200},
            {"expect", {{"best_fidelity", {{"value", 1.0}, {"tolerance", 1e-9}}}}}};
  }
  if (name == "theorem1") {
    return {{"name", "teleportation removes full complexity"}, {"command", "theorem1"}, {"N", 2},
            {"trials", 20}, {"channel", {{"kind", "depolarizing"}, {"p", 1.0}}},
            {"expect", {{"channel_complexity_before", 4}, {"channel_complexity_after", 0}}}};
  }
  throw SchemaError("unknown demo '" + name + "'");
}

namespace {

int finish(const Report& report, const std::optional<std::string>& out_path, std::ostream& out,
           std::ostream& err) {
  out << emit_table(report);
  if (out_path) {
    std::ofstream f(*out_path);
    if (!f) {
      err << "error: cannot write " << *out_path << '\n';
      return kExitInput;
    }
    f << report_to_json(report).dump(2) << '\n';
  }
  return report.passed() ? kExitOk : kExitAssertion;
}

int execute(const json& scenario, const std::optional<std::string>& out_path,
            const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = run_scenario(scenario, overrides);
  } catch (const SchemaError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitInput;
  }
  return finish(report, out_path, out, err);
}

}  // namespace

int run_file(const std::string& path, const std::optional<std::string>& out_path,
             const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "parse error: cannot open " << path << '\n';
    return kExitInput;
  }
  json scenario;
  try {
    scenario = json::parse(in);
  } catch (const json::parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInput;
  }
  return execute(scenario, out_path, overrides, out, err);
}

int run_demo(const std::string& name, const std::optional<std::string>& out_path,
             const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  json scenario;
  try {
    scenario = demo_scenario(name);
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return execute(scenario, out_path, overrides, out, err);
}

}  // namespace chanforge
