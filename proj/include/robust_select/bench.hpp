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

#ifndef ROBUST_SELECT_BENCH_HPP_
#define ROBUST_SELECT_BENCH_HPP_

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "robust_select/errors.hpp"
#include "robust_select/matroid.hpp"
#include "robust_select/scenario.hpp"
#include "robust_select/solvers.hpp"

namespace robust_select {

struct BenchConfig {
  std::size_t n_agents = 5;
  std::size_t n_actions = 50;
  double region = 100.0;
  std::size_t z_min = 1;
  std::size_t z_max = 10;
  std::size_t trials = 100;
  std::uint64_t base_seed = 0;
  double delta = 1e-3;
  double relative_epsilon = 1e-3;
  double curvature = 1.0;
  // 0 picks ROBUST_SELECT_THREADS, then the hardware concurrency.
  std::size_t threads = 0;
  // When false every wall_time_ms is written as 0 so that output files are
  // byte-for-byte reproducible.
  bool record_wall_time = true;

  void validate() const {
    if (n_agents == 0) throw ConfigError("n_agents must be positive");
    if (trials == 0) throw ConfigError("trials must be positive");
    if (!(region > 0.0) || !std::isfinite(region)) {
      throw ConfigError("region must be finite and positive");
    }
    if (z_min > z_max) throw ConfigError("z_min must not exceed z_max");
    solver_params().validate();
  }

  SolverParams solver_params() const {
    SolverParams p;
    p.delta = delta;
    p.relative_epsilon = relative_epsilon;
    p.curvature = curvature;
    return p;
  }
};

struct TrialResult {
  std::size_t z = 0;
  std::size_t trial = 0;
  std::string algorithm;
  double objective = 0.0;
  double evaluations = 0.0;  // f-equivalent
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct SummaryRow {
  std::size_t z = 0;
  std::string algorithm;
  std::size_t count = 0;
  double mean_objective = 0.0;
  double sd_objective = 0.0;
  double mean_evaluations = 0.0;
  double sd_evaluations = 0.0;
  double mean_wall_time_ms = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Depends only on (base_seed, z, trial), so the algorithm list never
// perturbs the scenarios.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t z,
                                std::size_t trial) {
  return splitmix64(base_seed ^
                    splitmix64((static_cast<std::uint64_t>(z) << 32) ^
                               static_cast<std::uint64_t>(trial)));
}

// Quadrant of [0, region)^2: 0 lower-left, 1 lower-right, 2 upper-left,
// 3 upper-right. The midlines belong to the right and upper halves.
inline std::size_t quadrant_of(const Point2& p, double region) {
  const double mid = region / 2.0;
  return (p.x >= mid ? 1u : 0u) + (p.y >= mid ? 2u : 0u);
}

// N agents and M actions drawn uniformly from [0, region)^2, constrained by
// a partition matroid over the four quadrants with capacity z each.
inline Scenario generate_scenario(const BenchConfig& config, std::size_t z,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, config.region);
  auto draw = [&] {
    const double x = coord(rng);
    return Point2{x, coord(rng)};
  };
  std::vector<Point2> agents(config.n_agents);
  for (auto& p : agents) p = draw();
  std::vector<Point2> actions(config.n_actions);
  for (auto& p : actions) p = draw();
  std::vector<std::vector<ActionId>> blocks(4);
  for (ActionId j = 0; j < actions.size(); ++j) {
    blocks[quadrant_of(actions[j], config.region)].push_back(j);
  }
  MatroidSpec matroid =
      MatroidSpec::partition(actions.size(), std::move(blocks), z);
  return Scenario(std::move(agents), std::move(actions), std::move(matroid));
}

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {"fast", "ratio", "greedy"};
  return names;
}

inline Solution run_algorithm(const std::string& name, const Scenario& scenario,
                              const SolverParams& params) {
  if (name == "fast") return saturate_robust(scenario, params);
  if (name == "ratio") return ratio_greedy_baseline(scenario);
  if (name == "greedy") return simple_greedy(scenario);
  if (name == "brute") return brute_force_maxmin(scenario);
  throw ConfigError("unknown algorithm '" + name + "'");
}

inline std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ROBUST_SELECT_THREADS")) {
    std::size_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs every algorithm on the same scenario for each (z, trial). Results
// are ordered by z, then trial, then the position of the algorithm in
// `algorithms`, regardless of how trials are spread over threads.
inline std::vector<TrialResult> run_benchmark(
    const BenchConfig& config, const std::vector<std::string>& algorithms) {
  config.validate();
  if (algorithms.empty()) throw ConfigError("no algorithms requested");
  const auto& known = known_algorithms();
  for (const auto& name : algorithms) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("unknown algorithm '" + name +
                        "' (expected fast, ratio or greedy)");
    }
  }

  const std::size_t n_z = config.z_max - config.z_min + 1;
  const std::size_t n_jobs = n_z * config.trials;
  const std::size_t n_alg = algorithms.size();
  std::vector<TrialResult> results(n_jobs * n_alg);
  const SolverParams params = config.solver_params();

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t job = next++; job < n_jobs; job = next++) {
      try {
        const std::size_t z = config.z_min + job / config.trials;
        const std::size_t trial = job % config.trials;
        const std::uint64_t seed = trial_seed(config.base_seed, z, trial);
        const Scenario scenario = generate_scenario(config, z, seed);
        for (std::size_t a = 0; a < n_alg; ++a) {
          const Solution sol = run_algorithm(algorithms[a], scenario, params);
          TrialResult& r = results[job * n_alg + a];
          r.z = z;
          r.trial = trial;
          r.algorithm = algorithms[a];
          r.objective = sol.min_value;
          r.evaluations = sol.f_evaluations();
          r.wall_time_ms = config.record_wall_time ? sol.wall_time_ms : 0.0;
          r.seed = seed;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      std::min(resolve_thread_count(config.threads), n_jobs);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

// Mean and sample standard deviation per (z, algorithm), ordered by z and
// then by first appearance of the algorithm.
inline std::vector<SummaryRow> aggregate(const std::vector<TrialResult>& results) {
  if (results.empty()) throw ConfigError("cannot aggregate an empty result set");
  std::vector<std::string> order;
  for (const auto& r : results) {
    if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) {
      order.push_back(r.algorithm);
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::vector<const TrialResult*>>
      groups;
  for (const auto& r : results) {
    const auto rank = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), r.algorithm) - order.begin());
    groups[{r.z, rank}].push_back(&r);
  }
  auto mean_sd = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd =
        xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    return std::pair{mean, sd};
  };
  std::vector<SummaryRow> rows;
  for (const auto& [key, members] : groups) {
    std::vector<double> obj, evals, wall;
    for (const TrialResult* r : members) {
      obj.push_back(r->objective);
      evals.push_back(r->evaluations);
      wall.push_back(r->wall_time_ms);
    }
    SummaryRow row;
    row.z = key.first;
    row.algorithm = order[key.second];
    row.count = members.size();
    std::tie(row.mean_objective, row.sd_objective) = mean_sd(obj);
    std::tie(row.mean_evaluations, row.sd_evaluations) = mean_sd(evals);
    row.mean_wall_time_ms = mean_sd(wall).first;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace csv {

inline constexpr const char* kRawHeader =
    "z,trial,algorithm,objective,evaluations,wall_time_ms,seed";
inline constexpr const char* kSummaryHeader =
    "z,algorithm,mean_objective,sd_objective,mean_evaluations,sd_evaluations,"
    "mean_wall_time_ms";

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline void write_raw(std::ostream& out, const std::vector<TrialResult>& rows) {
  out << kRawHeader << '\n';
  for (const auto& r : rows) {
    out << r.z << ',' << r.trial << ',' << r.algorithm << ','
        << format_double(r.objective) << ',' << format_double(r.evaluations)
        << ',' << format_double(r.wall_time_ms) << ',' << r.seed << '\n';
  }
}

inline void write_summary(std::ostream& out,
                          const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.z << ',' << r.algorithm << ',' << format_double(r.mean_objective)
        << ',' << format_double(r.sd_objective) << ','
        << format_double(r.mean_evaluations) << ','
        << format_double(r.sd_evaluations) << ','
        << format_double(r.mean_wall_time_ms) << '\n';
  }
}

template <class T>
T parse_number(const std::string& field, std::size_t line) {
  T value{};
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw IoError("line " + std::to_string(line) + ": bad number '" + field +
                  "'");
  }
  return value;
}

inline std::vector<TrialResult> read_raw(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRawHeader) {
    throw IoError("raw results: missing or unexpected header");
  }
  std::vector<TrialResult> rows;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 7) {
      throw IoError("line " + std::to_string(n) + ": expected 7 fields");
    }
    TrialResult r;
    r.z = parse_number<std::size_t>(f[0], n);
    r.trial = parse_number<std::size_t>(f[1], n);
    r.algorithm = f[2];
    r.objective = parse_number<double>(f[3], n);
    r.evaluations = parse_number<double>(f[4], n);
    r.wall_time_ms = parse_number<double>(f[5], n);
    r.seed = parse_number<std::uint64_t>(f[6], n);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace csv

template <class Rows, class Writer>
void write_file(const std::string& path, const Rows& rows, Writer writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  writer(out, rows);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline void emit_csv(const std::vector<TrialResult>& rows,
                     const std::string& path) {
  write_file(path, rows, [](std::ostream& o, const auto& r) {
    csv::write_raw(o, r);
  });
}

inline void emit_csv(const std::vector<SummaryRow>& rows,
                     const std::string& path) {
  write_file(path, rows, [](std::ostream& o, const auto& r) {
    csv::write_summary(o, r);
  });
}

}  // namespace robust_select

#endif  // ROBUST_SELECT_BENCH_HPP_
