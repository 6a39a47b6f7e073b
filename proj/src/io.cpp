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

#include "chanforge/io.hpp"

#include <cmath>
#include <sstream>

namespace chanforge {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw SchemaError(what + " must be a number");
  return j.get<double>();
}

std::size_t isqrt_exact(std::size_t v, const std::string& what) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v))));
  if (r * r != v) throw SchemaError(what + ": dimension " + std::to_string(v) + " is not a square");
  return r;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw SchemaError("complex number must be [re, im] or a real number, got " + j.dump());
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw SchemaError("matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError("matrix rows differ in length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("vector must be a nonempty array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Channel channel_from_json(const json& j, const Tolerances& tol) {
  const std::string where = "channel descriptor";
  const auto kind = require(j, "kind", where);
  if (!kind.is_string()) throw SchemaError(where + ": 'kind' must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "bit_flip" || k == "phase_flip" || k == "depolarizing") {
    return standard_channel(k, number(require(j, "p", where), k + " p"));
  }
  if (k == "amplitude_damping" || k == "phase_damping") {
    return standard_channel(k, number(require(j, "gamma", where), k + " gamma"));
  }
  if (k == "identity") {
    const std::size_t n = j.contains("N") ? j.at("N").get<std::size_t>() : 2;
    return identity_channel(n);
  }
  if (k == "unitary") {
    if (j.contains("matrix")) return unitary_channel(matrix_from_json(j.at("matrix")), tol);
    const auto& ms = require(j, "matrices", where);
    if (!ms.is_array() || ms.size() != 1) throw SchemaError("unitary channel takes one matrix");
    return unitary_channel(matrix_from_json(ms[0]), tol);
  }
  if (k == "kraus") {
    const auto& ms = require(j, "matrices", where);
    if (!ms.is_array() || ms.empty()) throw SchemaError("kraus channel needs a matrix list");
    std::vector<ComplexMatrix> kraus;
    for (const auto& m : ms) kraus.push_back(matrix_from_json(m));
    return Channel(std::move(kraus), tol);
  }
  throw SchemaError("unknown channel kind '" + k + "'");
}

std::string channel_label(const json& j) {
  if (j.contains("name") && j.at("name").is_string()) return j.at("name").get<std::string>();
  const std::string k = j.value("kind", std::string("?"));
  std::ostringstream os;
  os << k;
  if (j.contains("p")) os << "(p=" << j.at("p").dump() << ")";
  if (j.contains("gamma")) os << "(gamma=" << j.at("gamma").dump() << ")";
  return os.str();
}

ControlResources resources_from_json(const json& j, std::size_t n, const Tolerances& tol) {
  const std::string where = "resource descriptor";
  if (!j.is_object()) throw SchemaError(where + " must be an object");
  Ancilla ancilla = Ancilla::none();
  if (j.contains("schmidt")) {
    const auto mu = j.at("schmidt").get<std::vector<double>>();
    ancilla = Ancilla::schmidt(mu);
  } else if (j.contains("ancilla")) {
    const ComplexVector v = vector_from_json(j.at("ancilla"));
    const std::size_t d = static_cast<std::size_t>(v.size());
    const std::size_t da = j.value("dim_a", isqrt_exact(d, where));
    const std::size_t db = j.value("dim_b", d / std::max<std::size_t>(da, 1));
    ancilla = Ancilla::pure(PureState(v), da, db);
  } else if (j.contains("mixture")) {
    const std::size_t da = require(j, "dim_a", where).get<std::size_t>();
    const std::size_t db = require(j, "dim_b", where).get<std::size_t>();
    std::vector<double> weights;
    std::vector<PureState> states;
    for (const auto& c : j.at("mixture")) {
      weights.push_back(number(require(c, "weight", "mixture component"), "weight"));
      states.emplace_back(vector_from_json(require(c, "state", "mixture component")));
    }
    ancilla = Ancilla::mixture(weights, states, da, db);
  }

  const auto& outs = require(j, "outcomes", where);
  if (!outs.is_array() || outs.empty()) throw SchemaError(where + ": 'outcomes' must be a nonempty array");
  const std::size_t da = n * ancilla.dim_a();
  const std::size_t db = n * ancilla.dim_b();
  auto op = [](const json& o, const char* key, std::size_t dim) {
    return o.contains(key) ? matrix_from_json(o.at(key)) : identity(dim);
  };
  std::vector<LocalOutcome> outcomes;
  for (const auto& o : outs) {
    LocalOutcome lo;
    lo.u_aa = op(o, "U_Aa", da);
    lo.pi_aa = op(o, "Pi_Aa", da);
    lo.u_bb = op(o, "U_Bb", db);
    lo.pi_bb = op(o, "Pi_Bb", db);
    lo.filter_b = op(o, "F_B", n);
    lo.label = o.value("label", std::string());
    outcomes.push_back(std::move(lo));
  }
  return ControlResources(n, std::move(ancilla), std::move(outcomes), tol);
}

json tolerances_to_json(const Tolerances& tol) {
  return {{"eps_rank", tol.eps_rank}, {"eps_tp", tol.eps_tp}, {"eps_eq", tol.eps_eq},
          {"eps_herm", tol.eps_herm}};
}

Tolerances tolerances_from_json(const json& j, Tolerances base) {
  if (!j.is_object()) throw SchemaError("tolerances must be an object");
  for (const auto& [key, value] : j.items()) {
    const double v = number(value, "tolerance " + key);
    if (key == "eps_rank") base.eps_rank = v;
    else if (key == "eps_tp") base.eps_tp = v;
    else if (key == "eps_eq") base.eps_eq = v;
    else if (key == "eps_herm") base.eps_herm = v;
    else throw SchemaError("unknown tolerance '" + key + "'");
  }
  base.validate();
  return base;
}

}  // namespace chanforge
