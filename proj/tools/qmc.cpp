// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmc/cli.hpp"

int main(int argc, char** argv) {
  qmc::cli::RunConfig cfg;
  cfg.threads = qmc::cli::default_threads();
  std::string format = "json";
  double tolerance = 0.0;
  std::size_t size_guard = 0;

  CLI::App app{"Identification and local asymptotic normality for quantum Markov chains"};
  app.require_subcommand(1);
  app.add_option("--tolerance", tolerance, "Structural tolerance for input validation")->check(CLI::PositiveNumber);
  app.add_option("--size-guard", size_guard, "Largest number of output amplitudes to materialise")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads (default: QMC_THREADS or 1)")->check(CLI::Range(1, 1024));
  app.add_option("-o,--output", cfg.output, "Report file (default: standard output)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.fallthrough();

  auto* validate = app.add_subcommand("validate", "Check a Kraus family");
  validate->add_option("family", cfg.inputs, "Kraus file")->required()->expected(1);

  auto* spectral = app.add_subcommand("spectral", "Spectrum, stationary state and primitivity");
  spectral->add_option("family", cfg.inputs, "Kraus file")->required()->expected(1);

  auto* output = app.add_subcommand("output-state", "Output state after n steps");
  output->add_option("family", cfg.inputs, "Kraus file")->required()->expected(1);
  output->add_option("--n", cfg.n, "Number of noise units")->check(CLI::PositiveNumber);
  output->add_option("--variant", cfg.variant, "stationary, system or joint")
      ->check(CLI::IsMember({"stationary", "system", "joint"}));
  output->add_option("--sidecar", cfg.sidecar, "Write the entries as little-endian float64 re/im pairs");

  auto* equivalence = app.add_subcommand("equivalence", "Decide equivalence of two families");
  equivalence->add_option("families", cfg.inputs, "Two Kraus files")->required()->expected(2);
  equivalence->add_option("--n", cfg.n, "Window length for the finite-output comparison")->check(CLI::PositiveNumber);

  auto* covariance = app.add_subcommand("covariance", "Markov covariance of two observables");
  covariance->add_option("files", cfg.inputs, "Kraus file and two observable files")->required()->expected(3);
  covariance->add_option("--ns", cfg.ladder, "Ladder of n for the empirical values")->delimiter(',');
  covariance->add_flag("--center", cfg.center, "Subtract stationary means from the observables");

  auto* qfi = app.add_subcommand("qfi", "Asymptotic quantum Fisher information");
  qfi->add_option("family", cfg.inputs, "Family file")->required()->expected(1);

  auto* scan = app.add_subcommand("lan-scan", "Convergence of the deformed transfer powers");
  scan->add_option("family", cfg.inputs, "Family file")->required()->expected(1);
  scan->add_option("--c", cfg.c, "Half-width of the (u, v) square")->check(CLI::PositiveNumber);
  scan->add_option("--grid", cfg.grid_points, "Grid points per axis")->check(CLI::Range(2, 1000));
  scan->add_option("--ns", cfg.ladder, "Ladder of n")->delimiter(',');

  auto* gram = app.add_subcommand("lan-gram", "Weak convergence of the output model");
  gram->add_option("family", cfg.inputs, "Family file")->required()->expected(1);
  gram->add_option("--grid", cfg.grid, "Local parameters u")->delimiter(',');
  gram->add_option("--ns", cfg.ladder, "Ladder of n")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "csv" ? qmc::cli::Format::csv : qmc::cli::Format::json;
  if (tolerance > 0) cfg.tolerance = tolerance;
  if (size_guard > 0) cfg.size_guard = size_guard;
  return qmc::cli::run(cfg);
}
