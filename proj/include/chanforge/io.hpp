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

#include "json.hpp"

#include "chanforge/channels.hpp"
#include "chanforge/control.hpp"
#include "chanforge/matcore.hpp"

namespace chanforge {

// Malformed or incomplete scenario / descriptor content.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Complex numbers are [re, im] pairs (a bare number is read as real);
// matrices are row-major nested arrays.
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const nlohmann::json& j);

// {"kind": "bit_flip" | "phase_flip" | "depolarizing" | "amplitude_damping" |
//  "phase_damping" | "identity" | "unitary" | "kraus", "p" | "gamma": x,
//  "matrices": [...], "matrix": ...}
Channel channel_from_json(const nlohmann::json& j, const Tolerances& tol = {});

// Human-readable name such as "bit_flip(p=0.3)".
std::string channel_label(const nlohmann::json& j);

// {"schmidt": [...]} or {"ancilla": [...], "dim_a": k, "dim_b": k} (or
// "mixture": [{"weight": w, "state": [...]}, ...]), plus
// "outcomes": [{"U_Aa", "Pi_Aa", "U_Bb", "Pi_Bb", "F_B"}, ...]. Missing
// operators default to the identity.
ControlResources resources_from_json(const nlohmann::json& j, std::size_t n,
                                     const Tolerances& tol = {});

nlohmann::json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const nlohmann::json& j, Tolerances base = {});

}  // namespace chanforge
