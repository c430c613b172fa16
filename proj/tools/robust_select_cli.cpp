// Copyright 2026 The Authors.
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

// Command-line front end: solve one scenario, run the Monte Carlo
// benchmark, or run the small-instance verification suite.
//
// Exit codes: 0 success, 1 invariant violation or internal error,
// 2 usage or configuration error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "robust_select/bench.hpp"
#include "robust_select/invariants.hpp"
#include "robust_select/json_io.hpp"
#include "robust_select/solvers.hpp"

namespace {

using namespace robust_select;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct SolveFlags {
  std::string config;
  std::string algorithm = "fast";
  double delta = 1e-3;
  std::optional<double> epsilon;
  double curvature = 1.0;
  std::optional<double> gamma;
  std::string output;
};

struct BenchFlags {
  std::string config;
  BenchConfig bench;
  std::string algorithms = "fast,ratio";
  std::string out = "results.csv";
  std::string summary = "summary.csv";
  bool no_wall_time = false;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_solve(const SolveFlags& flags) {
  const Scenario scenario = load_scenario(flags.config);
  SolverParams params;
  params.delta = flags.delta;
  params.epsilon = flags.epsilon;
  params.curvature = flags.curvature;
  params.validate();

  Solution sol;
  if (flags.algorithm == "greedy") {
    sol = simple_greedy(scenario, flags.gamma);
  } else {
    sol = run_algorithm(flags.algorithm, scenario, params);
  }
  const std::string text = solution_to_json(sol).dump() + "\n";
  if (flags.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(flags.output);
    if (!out || !(out << text)) {
      throw ConfigError("cannot write '" + flags.output + "'");
    }
  }
  return kOk;
}

int cmd_bench(BenchFlags flags, const CLI::App& sub) {
  BenchConfig config = flags.bench;
  if (!flags.config.empty()) {
    // Values from the file, overridden by any flag given explicitly.
    BenchConfig from_file = bench_config_from_json(read_json_file(flags.config));
    auto take = [&](const char* option, auto& dst, const auto& src) {
      if (sub.count(option) == 0) dst = src;
    };
    take("--agents", config.n_agents, from_file.n_agents);
    take("--actions", config.n_actions, from_file.n_actions);
    take("--region", config.region, from_file.region);
    take("--z-min", config.z_min, from_file.z_min);
    take("--z-max", config.z_max, from_file.z_max);
    take("--trials", config.trials, from_file.trials);
    take("--seed", config.base_seed, from_file.base_seed);
    take("--delta", config.delta, from_file.delta);
    take("--epsilon", config.relative_epsilon, from_file.relative_epsilon);
    take("--curvature", config.curvature, from_file.curvature);
    take("--threads", config.threads, from_file.threads);
    take("--no-wall-time", config.record_wall_time, from_file.record_wall_time);
  }
  if (flags.no_wall_time) config.record_wall_time = false;
  config.validate();

  const auto algorithms = split_list(flags.algorithms);
  // Probe both outputs before spending minutes on trials.
  for (const std::string& path : {flags.out, flags.summary}) {
    std::ofstream probe(path, std::ios::app);
    if (!probe) throw ConfigError("cannot write '" + path + "'");
  }
  std::cerr << "running " << (config.z_max - config.z_min + 1) * config.trials
            << " scenarios x " << algorithms.size() << " algorithms\n";
  const auto results = run_benchmark(config, algorithms);
  const auto summary = aggregate(results);
  emit_csv(results, flags.out);
  emit_csv(summary, flags.summary);
  csv::write_summary(std::cout, summary);
  std::cerr << "wrote " << flags.out << " and " << flags.summary << "\n";
  return kOk;
}

int cmd_check(const invariants::CheckOptions& options) {
  const auto report = invariants::run_checks(options);
  std::size_t passed = 0, failed = 0;
  for (const auto& [name, tally] : report.tallies()) {
    std::cout << name << " passed=" << tally.first << " failed=" << tally.second
              << "\n";
    passed += tally.first;
    failed += tally.second;
  }
  std::cout << "total passed=" << passed << " failed=" << failed << "\n";
  if (const auto& failure = report.first_failure()) {
    Json counterexample = {{"check", failure->check},
                           {"detail", failure->detail},
                           {"scenario", failure->scenario}};
    std::cout << "counterexample " << counterexample.dump() << "\n";
    std::cerr << "invariant violated: " << failure->check << ": "
              << failure->detail << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust max-min action selection under matroid constraints"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario file");
  solve_cmd->add_option("--config", solve.config, "Scenario JSON file")
      ->required();
  solve_cmd->add_option("--algorithm", solve.algorithm)
      ->check(CLI::IsMember({"fast", "greedy", "ratio", "brute"}));
  solve_cmd->add_option("--delta", solve.delta, "Threshold shrink factor");
  solve_cmd->add_option("--epsilon", solve.epsilon,
                        "Absolute bisection gap (default 1e-3 * min_i h_i(V))");
  solve_cmd->add_option("--curvature", solve.curvature,
                        "Curvature used in the acceptance test");
  solve_cmd->add_option("--gamma", solve.gamma,
                        "greedy only: run on the surrogate at this level");
  solve_cmd->add_option("--output", solve.output, "Write JSON here");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo benchmark");
  bench_cmd->add_option("--config", bench.config, "BenchConfig JSON file");
  bench_cmd->add_option("--agents", bench.bench.n_agents);
  bench_cmd->add_option("--actions", bench.bench.n_actions);
  bench_cmd->add_option("--region", bench.bench.region);
  bench_cmd->add_option("--z-min", bench.bench.z_min);
  bench_cmd->add_option("--z-max", bench.bench.z_max);
  bench_cmd->add_option("--trials", bench.bench.trials);
  bench_cmd->add_option("--seed", bench.bench.base_seed);
  bench_cmd->add_option("--delta", bench.bench.delta);
  bench_cmd->add_option("--epsilon", bench.bench.relative_epsilon,
                        "Bisection gap relative to min_i h_i(V)");
  bench_cmd->add_option("--curvature", bench.bench.curvature);
  bench_cmd->add_option("--threads", bench.bench.threads,
                        "Worker threads (0: ROBUST_SELECT_THREADS or all cores)");
  bench_cmd->add_option("--algorithms", bench.algorithms,
                        "Comma-separated subset of fast,ratio,greedy");
  bench_cmd->add_option("--out", bench.out, "Per-trial CSV");
  bench_cmd->add_option("--summary", bench.summary, "Per-(z, algorithm) CSV");
  bench_cmd->add_flag("--no-wall-time", bench.no_wall_time,
                      "Write 0 for wall times (byte-reproducible output)");

  invariants::CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Small-instance verification");
  check_cmd->add_option("--instances", check.instances);
  check_cmd->add_option("--max-actions", check.max_actions);
  check_cmd->add_option("--max-agents", check.max_agents);
  check_cmd->add_option("--seed", check.seed);
  check_cmd->add_option("--delta", check.delta);
  check_cmd->add_flag("--inject-corrupt-matroid", check.inject_corrupt_matroid,
                      "Include a non-matroid fixture (negative test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*bench_cmd) return cmd_bench(bench, *bench_cmd);
    if (*check_cmd) {
      if (check.max_agents == 0 || check.instances == 0) {
        throw ConfigError("--instances and --max-agents must be positive");
      }
      return cmd_check(check);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RefusalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
