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

#ifndef ROBUST_SELECT_INVARIANTS_HPP_
#define ROBUST_SELECT_INVARIANTS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "robust_select/action_set.hpp"
#include "robust_select/errors.hpp"
#include "robust_select/json_io.hpp"
#include "robust_select/matroid.hpp"
#include "robust_select/oracle.hpp"
#include "robust_select/scenario.hpp"
#include "robust_select/solvers.hpp"
#include "robust_select/surrogate.hpp"

// Randomized small-instance verification of the structural properties and
// approximation guarantees. Everything here is exhaustive over subsets and
// meant for ground sets of at most kMaxCheckActions actions.
namespace robust_select::invariants {

inline constexpr std::size_t kMaxCheckActions = 7;
inline constexpr double kTolerance = 1e-9;

struct SmallInstanceShape {
  std::size_t max_agents = 3;
  std::size_t max_actions = 6;
};

// Random instance with 1..max_agents agents, 1..max_actions actions and
// either a uniform matroid (rank 1..M) or a partition matroid with 1..3
// blocks and capacities 0..2.
inline Scenario random_small_scenario(std::mt19937_64& rng,
                                      const SmallInstanceShape& shape) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  const std::size_t n = pick(1, shape.max_agents);
  const std::size_t m = pick(1, shape.max_actions);
  std::vector<Point2> agents(n), actions(m);
  for (auto& p : agents) p = {coord(rng), coord(rng)};
  for (auto& p : actions) p = {coord(rng), coord(rng)};
  if (pick(0, 1) == 0) {
    const std::size_t rank = pick(1, m);
    return Scenario(std::move(agents), std::move(actions),
                    MatroidSpec::uniform(m, rank));
  }
  const std::size_t n_blocks = pick(1, std::min<std::size_t>(3, m));
  std::vector<std::vector<ActionId>> blocks(n_blocks);
  for (ActionId j = 0; j < m; ++j) {
    // The first n_blocks actions seed one block each so none is empty.
    blocks[j < n_blocks ? j : pick(0, n_blocks - 1)].push_back(j);
  }
  std::vector<std::size_t> caps(n_blocks);
  for (auto& c : caps) c = pick(0, 2);
  return Scenario(std::move(agents), std::move(actions),
                  MatroidSpec::partition(m, std::move(blocks), std::move(caps)));
}

// Truncation levels used on each instance: 0, then five points evenly
// spaced in (0, min_i h_i(V)].
inline std::vector<double> gamma_grid(const Scenario& s) {
  const double top = min_objective(s, s.ground_set());
  std::vector<double> grid = {0.0};
  for (int k = 1; k <= 5; ++k) grid.push_back(top * k / 5.0);
  return grid;
}

struct Failure {
  std::string check;
  std::string detail;
  Json scenario;
};

class Report {
 public:
  void pass(const std::string& check) { ++tallies_[check].first; }

  void fail(const std::string& check, std::string detail, const Scenario& s) {
    ++tallies_[check].second;
    if (!first_failure_) {
      first_failure_ = Failure{check, std::move(detail), scenario_to_json(s)};
    }
  }

  // Records a pass or a failure; `detail` is only built on failure.
  template <class Detail>
  void expect(bool ok, const std::string& check, const Scenario& s,
              Detail&& detail) {
    if (ok) {
      pass(check);
    } else {
      fail(check, detail(), s);
    }
  }

  bool ok() const { return !first_failure_.has_value(); }
  const std::optional<Failure>& first_failure() const { return first_failure_; }
  // check name -> (passed, failed)
  const std::map<std::string, std::pair<std::size_t, std::size_t>>& tallies()
      const {
    return tallies_;
  }

 private:
  std::map<std::string, std::pair<std::size_t, std::size_t>> tallies_;
  std::optional<Failure> first_failure_;
};

namespace detail {

inline std::string describe(const ActionSet& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

// All (A, B, v) with A ⊆ B ⊆ V and v ∉ B, given values for every mask.
template <class Visit>
void for_each_nested_pair(std::size_t m, Visit&& visit) {
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t b = 0; b < count; ++b) {
    for (std::uint64_t a = b;; a = (a - 1) & b) {
      visit(a, b);
      if (a == 0) break;
    }
  }
}

}  // namespace detail

// Monotonicity and diminishing returns of a tabulated set function.
// Returns the first violating (A, B, v) as a message, if any.
inline std::optional<std::string> find_submodularity_violation(
    std::size_t m, const std::vector<double>& value) {
  std::optional<std::string> out;
  detail::for_each_nested_pair(m, [&](std::uint64_t a, std::uint64_t b) {
    if (out) return;
    if (value[a] > value[b] + kTolerance) {
      out = "monotonicity: f(" + detail::describe(ActionSet::from_mask(a)) +
            ") > f(" + detail::describe(ActionSet::from_mask(b)) + ")";
      return;
    }
    for (std::size_t v = 0; v < m; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (b & bit) continue;
      const double gain_a = value[a | bit] - value[a];
      const double gain_b = value[b | bit] - value[b];
      if (gain_a + kTolerance < gain_b) {
        out = "diminishing returns: v=" + std::to_string(v) + ", A=" +
              detail::describe(ActionSet::from_mask(a)) + ", B=" +
              detail::describe(ActionSet::from_mask(b));
        return;
      }
    }
  });
  return out;
}

template <class Fn>
std::vector<double> tabulate(std::size_t m, Fn&& fn) {
  std::vector<double> value(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < value.size(); ++mask) {
    value[mask] = fn(ActionSet::from_mask(mask));
  }
  return value;
}

// Structural properties of the agent objectives, the surrogate and the
// matroid on one instance.
inline void check_structure(const Scenario& s, Report& report) {
  const std::size_t m = s.num_actions();
  for (std::size_t i = 0; i < s.num_agents(); ++i) {
    auto values = tabulate(m, [&](const ActionSet& a) {
      return proximity_objective(s, i, a);
    });
    auto bad = find_submodularity_violation(m, values);
    report.expect(!bad, "objective_submodular", s, [&] {
      return "agent " + std::to_string(i) + ": " + *bad;
    });
  }

  for (double gamma : gamma_grid(s)) {
    SurrogateOracle f(s, gamma);
    auto values = tabulate(m, [&](const ActionSet& a) { return f.evaluate(a); });
    auto bad = find_submodularity_violation(m, values);
    report.expect(!bad, "surrogate_submodular", s, [&] {
      return "gamma " + std::to_string(gamma) + ": " + *bad;
    });

    bool bounded = true;
    std::string where;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < count && bounded; ++mask) {
      const ActionSet a = ActionSet::from_mask(mask);
      const double fv = values[mask];
      const double worst = min_objective(s, a);
      bool all_saturated = true;
      for (std::size_t i = 0; i < s.num_agents(); ++i) {
        all_saturated = all_saturated && proximity_objective(s, i, a) >= gamma;
      }
      const double lo =
          std::min(worst, gamma) / static_cast<double>(s.num_agents());
      const bool saturated_ok = all_saturated ? fv >= gamma - kTolerance
                                              : fv < gamma + kTolerance;
      bounded = fv >= -kTolerance && fv <= gamma + kTolerance &&
                fv + kTolerance >= lo && saturated_ok;
      if (!bounded) where = detail::describe(a);
    }
    report.expect(bounded, "surrogate_bounds", s, [&] {
      return "gamma " + std::to_string(gamma) + ", S=" + where;
    });

    // Cached and uncached paths must agree bit for bit.
    SurrogateOracle cached(s, gamma);
    bool identical = true;
    ActionSet base;
    for (ActionId e = 0; e < m && identical; ++e) {
      const double g = cached.marginal_gain(base, e);
      identical = g == values[base.with(e).to_mask()] - values[base.to_mask()];
      if (e % 2 == 0) base.insert(e);
    }
    report.expect(identical, "cache_transparency", s,
                  [&] { return "gamma " + std::to_string(gamma); });
  }

  auto violation = find_matroid_axiom_violation(s.constraint());
  report.expect(!violation, "matroid_axioms", s, [&] {
    return violation->describe() + " (A=" + detail::describe(violation->a) +
           ", B=" + detail::describe(violation->b) + ")";
  });
}

// Threshold greedy against the exhaustive surrogate maximizer: the
// per-level ratio bound and the per-insertion comparison with the
// optimal set's remaining elements.
inline void check_threshold_greedy(const Scenario& s, double delta,
                                   Report& report) {
  const MatroidSpec& m = s.constraint();
  for (double gamma : gamma_grid(s)) {
    SurrogateOracle exact(s, gamma);
    const ActionSet optimum = brute_force_surrogate_max(exact, m);
    const double opt_value = exact.evaluate(optimum);
    SurrogateOracle curv_oracle(s, gamma);
    const double c_f = compute_curvature(curv_oracle).value;

    // For each accepted element: f(e|S_m) >= f(o|S_m) / (1 + delta) for all
    // o in S* \ S_m that could still be added to S_m.
    SurrogateOracle probe(s, gamma);
    bool relation_ok = true;
    std::string relation_detail;
    ThresholdGreedyOptions options;
    options.on_add = [&](const ActionSet& before, ActionId e, double gain,
                         double) {
      for (ActionId o : optimum) {
        if (!m.can_extend(before, o)) continue;
        const double other = probe.marginal_gain(before, o);
        if (gain * (1.0 + delta) + kTolerance < other) {
          relation_ok = false;
          relation_detail = "S=" + detail::describe(before) + ", e=" +
                            std::to_string(e) + ", o=" + std::to_string(o);
        }
      }
    };
    SurrogateOracle f(s, gamma);
    const ActionSet greedy = threshold_greedy(f, m, delta, options);
    const double value = f.evaluate(greedy);
    report.expect(relation_ok, "threshold_relation", s, [&] {
      return "gamma " + std::to_string(gamma) + ": " + relation_detail;
    });
    report.expect(m.is_independent(greedy), "feasibility", s,
                  [&] { return "threshold greedy " + detail::describe(greedy); });
    report.expect(value + kTolerance >= opt_value / (1.0 + c_f + delta),
                  "threshold_ratio_bound", s, [&] {
                    std::ostringstream os;
                    os.precision(17);
                    os << "gamma " << gamma << ": f(greedy)=" << value
                       << " f(opt)=" << opt_value << " c_f=" << c_f;
                    return os.str();
                  });

    SurrogateOracle plain(s, gamma);
    ThresholdGreedyOptions no_reuse;
    no_reuse.reuse_gain_bounds = false;
    const ActionSet again = threshold_greedy(plain, m, delta, no_reuse);
    report.expect(again == greedy, "gain_reuse_transparent", s, [&] {
      return detail::describe(again) + " vs " + detail::describe(greedy);
    });
  }
}

// End-to-end guarantee and bisection bookkeeping of the robust solver.
inline void check_saturate(const Scenario& s, const SolverParams& params,
                           Report& report) {
  const Solution sol = saturate_robust(s, params);
  const Solution opt = brute_force_maxmin(s);
  const double epsilon = *sol.param("epsilon");
  double c_f = params.curvature;
  if (params.exact_curvature) {
    c_f = 0.0;
    for (const auto& step : sol.trace) c_f = std::max(c_f, step.curvature);
  }
  report.expect(
      sol.min_value + kTolerance >=
          opt.min_value / (1.0 + c_f + params.delta) - epsilon,
      "robust_ratio_bound", s, [&] {
        std::ostringstream os;
        os.precision(17);
        os << "fast " << sol.min_value << " " << sol.selected << " vs optimum "
           << opt.min_value << " " << opt.selected << " (c_f=" << c_f
           << ", epsilon=" << epsilon << ")";
        return os.str();
      });
  report.expect(s.constraint().is_independent(sol.selected), "feasibility", s,
                [&] { return "fast " + detail::describe(sol.selected); });
  report.expect(s.constraint().is_independent(opt.selected), "feasibility", s,
                [&] { return "brute " + detail::describe(opt.selected); });

  const Solution repeat = saturate_robust(s, params);
  report.expect(repeat.selected == sol.selected &&
                    repeat.min_value == sol.min_value &&
                    repeat.evaluations.individual() ==
                        sol.evaluations.individual(),
                "determinism", s, [] { return std::string("fast differs"); });

  const double u0 = min_objective(s, s.ground_set());
  if (u0 > epsilon) {
    const auto expected =
        static_cast<std::size_t>(std::ceil(std::log2(u0 / epsilon)));
    report.expect(sol.trace.size() == expected, "bisection_iterations", s, [&] {
      return "iterations " + std::to_string(sol.trace.size()) + ", expected " +
             std::to_string(expected);
    });
    bool halves = true;
    for (const auto& step : sol.trace) {
      halves = halves && step.lower <= step.gamma && step.gamma <= step.upper;
      const double gap = step.upper - step.lower;
      const double next = step.accepted ? step.upper - step.gamma
                                        : step.gamma - step.lower;
      halves = halves && std::abs(next - gap / 2.0) <= 1e-12 * u0;
    }
    report.expect(halves, "bisection_halving", s,
                  [] { return std::string("gap did not halve"); });
  }

  for (const Solution& other : {ratio_greedy_baseline(s), simple_greedy(s)}) {
    report.expect(s.constraint().is_independent(other.selected), "feasibility",
                  s, [&] {
                    return other.algorithm + " " + detail::describe(other.selected);
                  });
  }
}

struct CheckOptions {
  std::size_t instances = 200;
  std::size_t max_actions = 6;
  std::size_t max_agents = 3;
  std::uint64_t seed = 1;
  double delta = 1e-3;
  // Adds a fixture whose partition blocks overlap; it is not a matroid and
  // must be reported.
  bool inject_corrupt_matroid = false;
};

// Overlapping blocks {0,1} and {1,2} with capacity 1: {0,2} and {1} are
// independent but neither 0 nor 2 can be added to {1}.
inline Scenario corrupt_matroid_fixture() {
  return Scenario({{0, 0}}, {{10, 0}, {20, 0}, {30, 0}},
                  MatroidSpec::unchecked_partition(3, {{0, 1}, {1, 2}}, {1, 1}));
}

inline Report run_checks(const CheckOptions& options) {
  if (options.max_actions == 0 || options.max_actions > kMaxCheckActions) {
    throw RefusalError("max actions must be in [1, " +
                       std::to_string(kMaxCheckActions) + "]");
  }
  Report report;
  if (options.inject_corrupt_matroid) {
    check_structure(corrupt_matroid_fixture(), report);
  }
  std::mt19937_64 rng(options.seed);
  SmallInstanceShape shape{options.max_agents, options.max_actions};
  SolverParams params;
  params.delta = options.delta;
  params.exact_curvature = true;
  for (std::size_t k = 0; k < options.instances; ++k) {
    const Scenario s = random_small_scenario(rng, shape);
    check_structure(s, report);
    check_threshold_greedy(s, options.delta, report);
    check_saturate(s, params, report);
  }
  return report;
}

}  // namespace robust_select::invariants

#endif  // ROBUST_SELECT_INVARIANTS_HPP_
