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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chanforge/io.hpp"
#include "chanforge/matcore.hpp"

namespace chanforge {

struct ResultValue {
  std::string name;
  nlohmann::json value;
  double tolerance;

  bool operator==(const ResultValue&) const = default;
};

struct Assertion {
  std::string name;
  double expected;
  double actual;
  double tolerance;
  bool pass;

  bool operator==(const Assertion&) const = default;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;

  bool operator==(const ResultTable&) const = default;
};

struct Report {
  std::string name;
  std::string command;
  nlohmann::json scenario;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  std::vector<ResultValue> results;
  ResultTable table;
  std::vector<Assertion> assertions;

  bool passed() const;
  bool operator==(const Report& other) const;
};

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

struct RunOverrides {
  std::optional<double> eps_rank;
  std::optional<std::uint64_t> seed;
};

// Validates and executes one scenario. Throws SchemaError for malformed or
// incomplete input and ValueError / DimensionError for values the library
// rejects.
Report run_scenario(const nlohmann::json& scenario, const RunOverrides& overrides = {});

// Aligned text: the result table (floats with 12 significant digits), then
// scalar results and assertions.
std::string emit_table(const Report& report);

// Built-in scenarios reproducing the documented reference values.
std::vector<std::string> demo_names();
nlohmann::json demo_scenario(const std::string& name);

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitInput = 2 };

// Loads `path`, runs it, prints the table to `out`, writes the JSON report to
// `out_path` when given. Returns the process exit status.
int run_file(const std::string& path, const std::optional<std::string>& out_path,
             const RunOverrides& overrides, std::ostream& out, std::ostream& err);

int run_demo(const std::string& name, const std::optional<std::string>& out_path,
             const RunOverrides& overrides, std::ostream& out, std::ostream& err);

}  // namespace chanforge
