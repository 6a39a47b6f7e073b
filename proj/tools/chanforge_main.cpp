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

// Command-line front end: `chanforge run` and `chanforge demo`.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chanforge/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"chanforge: channel complexity and control-resource simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string demo_name;
  std::string out_path;
  double eps_rank = 0.0;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Run a JSON scenario file");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  auto* demo = app.add_subcommand("demo", "Run a built-in scenario ('list' shows names)");
  demo->add_option("name", demo_name, "Demo name")->required();

  for (auto* sub : {run, demo}) {
    sub->add_option("--out", out_path, "Write the JSON report here");
    sub->add_option("--eps-rank", eps_rank, "Override the rank tolerance");
    sub->add_option("--seed", seed, "Override the scenario seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : chanforge::kExitInput;
  }

  auto* active = run->parsed() ? run : demo;
  chanforge::RunOverrides overrides;
  if (active->count("--eps-rank") > 0) overrides.eps_rank = eps_rank;
  if (active->count("--seed") > 0) overrides.seed = seed;
  std::optional<std::string> out;
  if (active->count("--out") > 0) out = out_path;

  if (run->parsed()) return chanforge::run_file(scenario_path, out, overrides, std::cout, std::cerr);
  if (demo_name == "list") {
    for (const auto& n : chanforge::demo_names()) std::cout << n << '\n';
    return chanforge::kExitOk;
  }
  return chanforge::run_demo(demo_name, out, overrides, std::cout, std::cerr);
}
