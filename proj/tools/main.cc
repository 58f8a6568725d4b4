// Copyright 2026 The scslab Authors
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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.h"
#include "config.h"

int main(int argc, char** argv) {
  using scslab::tools::kExitConfigError;

  CLI::App app{"scslab: Shannon cipher system experiments with a rate-limited side channel"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::size_t jobs = 1;

  for (const std::string& name : scslab::tools::CommandNames()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override seeds.root");
    sub->add_option("--tol", tolerance, "override solver.tolerance");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const scslab::tools::ExperimentConfig config =
        scslab::tools::LoadConfig(config_path, {seed, tolerance});
    return scslab::tools::RunCommand(command, config, {out_dir, jobs}, std::cout);
  } catch (const scslab::tools::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
}
