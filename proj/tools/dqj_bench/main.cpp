// Copyright 2026 The DQJ Authors
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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dqj/bench/config.hpp"
#include "dqj/bench/emit.hpp"
#include "dqj/bench/experiment.hpp"
#include "dqj/errors.hpp"
#include "dqj/jump_grid.hpp"
#include "dqj/version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct RunOptions {
  std::string config;
  std::string out;
  std::string format;
  std::optional<int> substep_div;
  std::optional<std::uint64_t> seed;
};

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON)")->required();
  cmd->add_option("--out", o.out, "Output file; stdout when omitted");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--substep-div", o.substep_div, "Integrator step h = dt / div");
  cmd->add_option("--seed", o.seed, "Base seed for sqj");
}

dqj::bench::ExperimentConfig load(const RunOptions& o) {
  dqj::bench::ExperimentConfig cfg = dqj::bench::load_config(o.config);
  if (o.substep_div) cfg.propagation.substep_div = *o.substep_div;
  if (o.seed) cfg.method.seed = *o.seed;
  if (!o.out.empty()) cfg.output.path = o.out;
  if (!o.format.empty()) cfg.output.format = dqj::bench::parse_format(o.format);
  cfg.validate();
  return cfg;
}

void print_counts(int max_grid, int max_jumps) {
  std::cout << "order,n_grid,n_jumps,n_traj,n_traj_enumerated\n";
  for (int order = 1; order <= 3; ++order) {
    for (int n = 1; n <= max_grid; ++n) {
      for (int j = 1; j <= max_jumps; ++j) {
        std::cout << order << ',' << n << ',' << j << ','
                  << dqj::count_trajectories(order, n, j) << ','
                  << dqj::enumerated_trajectories(order, n, j) << '\n';
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic quantum jump benchmarks"};
  app.set_version_flag("--version", std::string(dqj::kVersion));
  app.require_subcommand(1);

  RunOptions run_opts;
  RunOptions sweep_opts;
  std::string validate_path;
  int max_grid = 64;
  int max_jumps = 5;

  CLI::App* run = app.add_subcommand("run", "Run a single experiment");
  add_run_flags(run, run_opts);
  CLI::App* sweep = app.add_subcommand("sweep", "Run the sweep block of a config");
  add_run_flags(sweep, sweep_opts);
  CLI::App* validate = app.add_subcommand("validate", "Check a config and print it normalized");
  validate->add_option("--config", validate_path, "Experiment config (JSON)")->required();
  CLI::App* counts = app.add_subcommand("counts", "Print trajectory counts per order and grid");
  counts->add_option("--max-grid", max_grid, "Largest n_grid")->check(CLI::Range(1, 100000));
  counts->add_option("--max-jumps", max_jumps, "Largest number of jump operators")
      ->check(CLI::Range(1, 1000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed() || sweep->parsed()) {
      const dqj::bench::ExperimentConfig cfg = load(run->parsed() ? run_opts : sweep_opts);
      if (sweep->parsed() && !cfg.sweep) {
        throw dqj::ConfigError("sweep: config has no sweep block");
      }
      const auto rows = dqj::bench::run_experiment(cfg);
      dqj::bench::emit(rows, cfg.output.format, cfg.output.path);
    } else if (validate->parsed()) {
      const auto cfg = dqj::bench::load_config(validate_path);
      std::cout << dqj::bench::serialize_config(cfg) << '\n';
    } else if (counts->parsed()) {
      print_counts(max_grid, max_jumps);
    }
  } catch (const dqj::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const dqj::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dqj::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
