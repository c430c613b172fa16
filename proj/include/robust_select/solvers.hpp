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

#ifndef ROBUST_SELECT_SOLVERS_HPP_
#define ROBUST_SELECT_SOLVERS_HPP_

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robust_select/action_set.hpp"
#include "robust_select/errors.hpp"
#include "robust_select/matroid.hpp"
#include "robust_select/oracle.hpp"
#include "robust_select/scenario.hpp"
#include "robust_select/surrogate.hpp"

namespace robust_select {

struct SolverParams {
  // Threshold shrink factor: each pass divides the threshold by (1 + delta)
  // and passes stop below delta * F.
  double delta = 1e-3;
  // Absolute bisection gap. When unset, relative_epsilon * min_i h_i(V).
  std::optional<double> epsilon;
  double relative_epsilon = 1e-3;
  // c_f in the acceptance test f(S) >= gamma / (1 + c_f + delta).
  double curvature = 1.0;
  // Replace `curvature` by the exact curvature of each surrogate. Costs
  // M + 2 extra evaluations per level and is limited to small ground sets.
  bool exact_curvature = false;
  // Skip re-evaluating an element whose last known gain is already below
  // the current threshold. Gains never grow as S grows, so this does not
  // change the output, only the number of evaluations.
  bool reuse_gain_bounds = true;

  void validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      throw ConfigError("delta must be finite and positive");
    }
    if (epsilon && (!(*epsilon > 0.0) || !std::isfinite(*epsilon))) {
      throw ConfigError("epsilon must be finite and positive");
    }
    if (!(relative_epsilon > 0.0) || !std::isfinite(relative_epsilon)) {
      throw ConfigError("relative epsilon must be finite and positive");
    }
    if (!(curvature >= 0.0 && curvature <= 1.0)) {
      throw ConfigError("curvature must lie in [0, 1]");
    }
  }
};

// One iteration of the outer bisection on the saturation level.
struct BisectionStep {
  double lower = 0.0;  // bounds before the update
  double upper = 0.0;
  double gamma = 0.0;
  double surrogate_value = 0.0;  // f(S; gamma) of the threshold-greedy set
  double curvature = 0.0;
  bool accepted = false;  // true: lower <- gamma, false: upper <- gamma
  ActionSet selected;
};

struct Solution {
  std::string algorithm;
  ActionSet selected;
  double min_value = 0.0;  // min_i h_i(selected), recomputed
  EvaluationCounter evaluations;
  std::size_t num_agents = 1;
  double wall_time_ms = 0.0;
  // Algorithm parameters and final state, in a stable order for output.
  std::vector<std::pair<std::string, double>> params;
  std::vector<BisectionStep> trace;

  double f_evaluations() const { return evaluations.f_equivalent(num_agents); }

  std::optional<double> param(const std::string& name) const {
    for (const auto& [key, value] : params) {
      if (key == name) return value;
    }
    return std::nullopt;
  }
};

// Direct oracle for g(S) = min_i h_i(S); costs N units per evaluation.
class MinObjectiveOracle : public CachingOracle<MinObjectiveOracle> {
 public:
  explicit MinObjectiveOracle(const Scenario& scenario) : scenario_(&scenario) {}

  double compute(const ActionSet& s) const {
    return min_objective(*scenario_, s);
  }
  std::uint64_t evaluation_cost() const { return scenario_->num_agents(); }
  std::size_t ground_size() const { return scenario_->num_actions(); }

 private:
  const Scenario* scenario_;
};

namespace detail {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Solution finish(Solution sol, const Scenario& scenario,
                       const Stopwatch& watch) {
  sol.wall_time_ms = watch.elapsed_ms();
  sol.min_value = min_objective(scenario, sol.selected);
  sol.num_agents = scenario.num_agents();
  return sol;
}

}  // namespace detail

struct ThresholdGreedyStats {
  std::size_t passes = 0;
  bool reached_basis = false;
  double top_singleton = 0.0;  // F
};

struct ThresholdGreedyOptions {
  bool reuse_gain_bounds = true;
  // Called for every accepted element with the set before insertion, the
  // element, its marginal gain and the threshold of the current pass.
  std::function<void(const ActionSet&, ActionId, double, double)> on_add;
  ThresholdGreedyStats* stats = nullptr;
};

// Descending-threshold greedy under a matroid.
//
// F is the largest singleton value. Passes run at thresholds F, F/(1+delta),
// F/(1+delta)^2, ... while the threshold is at least delta * F. Each pass
// scans the elements outside S in ascending id order and inserts an element
// as soon as it is feasible and its marginal gain against the current S
// clears the threshold. The loop stops early once S is a basis or no
// element can clear any remaining threshold.
template <MarginalGainOracle O>
ActionSet threshold_greedy(O& f, const MatroidSpec& m, double delta,
                           const ThresholdGreedyOptions& options = {}) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ConfigError("delta must be finite and positive");
  }
  const std::size_t n = m.ground_size();
  ThresholdGreedyStats local_stats;
  ThresholdGreedyStats& stats = options.stats ? *options.stats : local_stats;
  stats = {};
  ActionSet s;
  if (n == 0) return s;

  const double empty_value = f.cached_value(s);
  // Last known gain of each element and |S| when it was computed. Since S
  // only grows, a matching size means the gain is current.
  std::vector<double> known_gain(n);
  std::vector<double> known_value(n);
  std::vector<std::size_t> known_at(n, 0);
  double top = -std::numeric_limits<double>::infinity();
  for (ActionId e = 0; e < n; ++e) {
    known_value[e] = f.evaluate(ActionSet{e});
    known_gain[e] = known_value[e] - empty_value;
    top = std::max(top, known_value[e]);
  }
  stats.top_singleton = top;
  if (!(top > 0.0)) return s;

  const double floor = delta * top;
  // Infeasible elements stay infeasible as S grows, and an element whose
  // gain drops below the last threshold can never be accepted again.
  std::vector<char> alive(n, 1);
  std::size_t alive_count = n;
  auto retire = [&](ActionId e) {
    alive[e] = 0;
    --alive_count;
  };

  for (double threshold = top; threshold >= floor && alive_count > 0;
       threshold /= 1.0 + delta) {
    ++stats.passes;
    for (ActionId e = 0; e < n; ++e) {
      if (!alive[e]) continue;
      if (!m.can_extend(s, e)) {
        retire(e);
        continue;
      }
      const bool current = known_at[e] == s.size();
      if (options.reuse_gain_bounds && known_gain[e] < threshold) {
        if (known_gain[e] < floor) retire(e);
        continue;
      }
      double gain;
      double value;
      if (options.reuse_gain_bounds && current) {
        gain = known_gain[e];
        value = known_value[e];
      } else {
        const auto g = f.marginal_gain_with_value(s, e);
        gain = g.gain;
        value = g.extended_value;
        known_gain[e] = gain;
        known_value[e] = value;
        known_at[e] = s.size();
      }
      if (gain >= threshold) {
        if (options.on_add) options.on_add(s, e, gain, threshold);
        s.insert(e);
        f.remember(s, value);
        retire(e);
      } else if (gain < floor) {
        retire(e);
      }
    }
    if (m.is_basis(s)) {
      stats.reached_basis = true;
      break;
    }
  }
  return s;
}

// Robust selection by bisection on the saturation level gamma.
//
// Starts from lower = 0 and upper = min_i h_i(V). Each iteration runs the
// threshold greedy on the surrogate truncated at gamma = (lower + upper)/2
// and keeps the result (raising lower) when its surrogate value reaches
// gamma / (1 + c_f + delta); otherwise upper drops to gamma. Stops when
// upper - lower <= epsilon and returns the last accepted set.
inline Solution saturate_robust(const Scenario& scenario,
                                const SolverParams& params) {
  params.validate();
  detail::Stopwatch watch;
  Solution sol;
  sol.algorithm = "fast";

  const ActionSet ground = scenario.ground_set();
  double upper = min_objective(scenario, ground, sol.evaluations);
  double lower = 0.0;
  const double epsilon = params.epsilon.value_or(params.relative_epsilon * upper);

  ThresholdGreedyOptions options;
  options.reuse_gain_bounds = params.reuse_gain_bounds;
  ActionSet best;
  if (upper > 0.0) {
    while (upper - lower > epsilon) {
      BisectionStep step;
      step.lower = lower;
      step.upper = upper;
      step.gamma = 0.5 * (upper + lower);
      SurrogateOracle f(scenario, step.gamma);
      step.selected = threshold_greedy(f, scenario.constraint(), params.delta,
                                       options);
      step.surrogate_value = f.cached_value(step.selected);
      step.curvature = params.exact_curvature ? compute_curvature(f).value
                                              : params.curvature;
      step.accepted = !(step.surrogate_value <
                        step.gamma / (1.0 + step.curvature + params.delta));
      if (step.accepted) {
        lower = step.gamma;
        best = step.selected;
      } else {
        upper = step.gamma;
      }
      sol.evaluations += f.counter();
      sol.trace.push_back(std::move(step));
    }
  }
  sol.selected = std::move(best);
  sol.params = {{"delta", params.delta},
                {"epsilon", epsilon},
                {"curvature", params.exact_curvature ? -1.0 : params.curvature},
                {"lower", lower},
                {"upper", upper},
                {"iterations", static_cast<double>(sol.trace.size())}};
  return detail::finish(std::move(sol), scenario, watch);
}

// Classic greedy: repeatedly add the feasible element of largest positive
// marginal gain (lowest id on ties) until S is a basis or nothing helps.
template <MarginalGainOracle O>
ActionSet plain_greedy(O& f, const MatroidSpec& m) {
  ActionSet s;
  while (true) {
    std::optional<ActionId> pick;
    double best_gain = 0.0;
    for (ActionId e = 0; e < m.ground_size(); ++e) {
      if (!m.can_extend(s, e)) continue;
      const double gain = f.marginal_gain(s, e);
      if (gain > best_gain) {
        best_gain = gain;
        pick = e;
      }
    }
    if (!pick) break;
    s.insert(*pick);
    if (m.is_basis(s)) break;
  }
  return s;
}

// Greedy on the surrogate truncated at `gamma`, or directly on
// g(S) = min_i h_i(S) when no gamma is given.
inline Solution simple_greedy(const Scenario& scenario,
                              std::optional<double> gamma = std::nullopt) {
  detail::Stopwatch watch;
  Solution sol;
  sol.algorithm = "greedy";
  if (gamma) {
    SurrogateOracle f(scenario, *gamma);
    sol.selected = plain_greedy(f, scenario.constraint());
    sol.evaluations = f.counter();
    sol.params = {{"gamma", *gamma}};
  } else {
    MinObjectiveOracle g(scenario);
    sol.selected = plain_greedy(g, scenario.constraint());
    sol.evaluations = g.counter();
  }
  return detail::finish(std::move(sol), scenario, watch);
}

// Ratio-based baseline (reconstructed). Each round, every agent i rates
// every feasible candidate e by r_i(e) = h_i(e | S) / max_e' h_i(e' | S),
// with 0/0 taken as 0. The candidate with the best worst-agent ratio
// min_i r_i(e) is added. Stops at a basis or when every score is zero.
inline Solution ratio_greedy_baseline(const Scenario& scenario) {
  detail::Stopwatch watch;
  Solution sol;
  sol.algorithm = "ratio";
  const MatroidSpec& m = scenario.constraint();
  const std::size_t n_agents = scenario.num_agents();
  ActionSet s;
  std::vector<ActionId> candidates;
  std::vector<double> gains;
  std::vector<double> score;
  while (true) {
    candidates.clear();
    for (ActionId e = 0; e < m.ground_size(); ++e) {
      if (m.can_extend(s, e)) candidates.push_back(e);
    }
    if (candidates.empty()) break;
    score.assign(candidates.size(), std::numeric_limits<double>::infinity());
    gains.resize(candidates.size());
    for (std::size_t i = 0; i < n_agents; ++i) {
      const double base = proximity_objective(scenario, i, s, sol.evaluations);
      double top = 0.0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        gains[c] = proximity_objective(scenario, i, s.with(candidates[c]),
                                       sol.evaluations) -
                   base;
        top = std::max(top, gains[c]);
      }
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double ratio = top > 0.0 ? gains[c] / top : 0.0;
        score[c] = std::min(score[c], ratio);
      }
    }
    std::size_t pick = 0;
    for (std::size_t c = 1; c < candidates.size(); ++c) {
      if (score[c] > score[pick]) pick = c;
    }
    if (!(score[pick] > 0.0)) break;
    s.insert(candidates[pick]);
    if (m.is_basis(s)) break;
  }
  sol.selected = std::move(s);
  return detail::finish(std::move(sol), scenario, watch);
}

// Exhaustive max-min oracle over all independent sets (M <= 20).
inline Solution brute_force_maxmin(const Scenario& scenario) {
  detail::Stopwatch watch;
  Solution sol;
  sol.algorithm = "brute";
  MinObjectiveOracle g(scenario);
  sol.selected = brute_force_maximize(g, scenario.constraint()).first;
  sol.evaluations = g.counter();
  return detail::finish(std::move(sol), scenario, watch);
}

// Exhaustive maximizer of the surrogate at fixed gamma (M <= 20).
inline ActionSet brute_force_surrogate_max(SurrogateOracle& f,
                                           const MatroidSpec& m) {
  return brute_force_maximize(f, m).first;
}

}  // namespace robust_select

#endif  // ROBUST_SELECT_SOLVERS_HPP_
