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

#ifndef ROBUST_SELECT_SCENARIO_HPP_
#define ROBUST_SELECT_SCENARIO_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "robust_select/action_set.hpp"
#include "robust_select/errors.hpp"
#include "robust_select/matroid.hpp"

namespace robust_select {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double euclidean_distance(const Point2& p, const Point2& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

// Counts single computations of one agent objective h_i on one set.
// Never decreases; reports divide by N to express evaluations of the
// averaged surrogate.
class EvaluationCounter {
 public:
  void add(std::uint64_t n = 1) { individual_ += n; }
  std::uint64_t individual() const { return individual_; }
  double f_equivalent(std::size_t n_agents) const {
    return n_agents == 0 ? 0.0
                         : static_cast<double>(individual_) /
                               static_cast<double>(n_agents);
  }
  EvaluationCounter& operator+=(const EvaluationCounter& other) {
    individual_ += other.individual_;
    return *this;
  }

 private:
  std::uint64_t individual_ = 0;
};

// Immutable problem instance: N agents, M actions, and the constraint over
// the actions. Agent-to-action distances are tabulated on construction.
class Scenario {
 public:
  Scenario(std::vector<Point2> agents, std::vector<Point2> actions,
           MatroidSpec constraint)
      : agents_(std::move(agents)),
        actions_(std::move(actions)),
        constraint_(std::move(constraint)) {
    if (agents_.empty()) throw InstanceError("scenario needs at least one agent");
    if (constraint_.ground_size() != actions_.size()) {
      throw InstanceError("matroid ground set size " +
                          std::to_string(constraint_.ground_size()) +
                          " does not match " + std::to_string(actions_.size()) +
                          " actions");
    }
    auto finite = [](const Point2& p) {
      return std::isfinite(p.x) && std::isfinite(p.y);
    };
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      if (!finite(agents_[i])) {
        throw InstanceError("agent " + std::to_string(i) +
                            " has a non-finite coordinate");
      }
    }
    for (std::size_t j = 0; j < actions_.size(); ++j) {
      if (!finite(actions_[j])) {
        throw InstanceError("action " + std::to_string(j) +
                            " has a non-finite coordinate");
      }
    }
    distances_.resize(agents_.size() * actions_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      for (std::size_t j = 0; j < actions_.size(); ++j) {
        distances_[i * actions_.size() + j] =
            euclidean_distance(agents_[i], actions_[j]);
      }
    }
  }

  std::size_t num_agents() const { return agents_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  const std::vector<Point2>& agents() const { return agents_; }
  const std::vector<Point2>& actions() const { return actions_; }
  const MatroidSpec& constraint() const { return constraint_; }
  ActionSet ground_set() const { return ActionSet::full(actions_.size()); }

  double distance(std::size_t agent, ActionId action) const {
    return distances_[agent * actions_.size() + action];
  }

  void check_agent(std::size_t agent) const {
    if (agent >= agents_.size()) {
      throw InstanceError("agent index " + std::to_string(agent) +
                          " out of range [0, " +
                          std::to_string(agents_.size()) + ")");
    }
  }

 private:
  std::vector<Point2> agents_;
  std::vector<Point2> actions_;
  MatroidSpec constraint_;
  std::vector<double> distances_;
};

// h_i(S) = max_{j in S} d(agent_i, action_j), with h_i(∅) = 0.
inline double proximity_objective(const Scenario& scenario, std::size_t agent,
                                  const ActionSet& s,
                                  EvaluationCounter& counter) {
  scenario.check_agent(agent);
  counter.add();
  double best = 0.0;
  for (ActionId j : s) {
    if (j >= scenario.num_actions()) {
      throw InstanceError("action id " + std::to_string(j) + " out of range");
    }
    best = std::max(best, scenario.distance(agent, j));
  }
  return best;
}

inline double proximity_objective(const Scenario& scenario, std::size_t agent,
                                  const ActionSet& s) {
  EvaluationCounter scratch;
  return proximity_objective(scenario, agent, s, scratch);
}

struct AttackOutcome {
  std::size_t agent = 0;
  double value = 0.0;
};

// The agent whose removal hurts most, i.e. argmin_i h_i(S). Ties go to the
// lowest index.
inline AttackOutcome worst_case_attack(const Scenario& scenario,
                                       const ActionSet& s,
                                       EvaluationCounter& counter) {
  AttackOutcome out{0, proximity_objective(scenario, 0, s, counter)};
  for (std::size_t i = 1; i < scenario.num_agents(); ++i) {
    const double v = proximity_objective(scenario, i, s, counter);
    if (v < out.value) out = {i, v};
  }
  return out;
}

inline AttackOutcome worst_case_attack(const Scenario& scenario,
                                       const ActionSet& s) {
  EvaluationCounter scratch;
  return worst_case_attack(scenario, s, scratch);
}

// g(S) = min_i h_i(S).
inline double min_objective(const Scenario& scenario, const ActionSet& s,
                            EvaluationCounter& counter) {
  return worst_case_attack(scenario, s, counter).value;
}

inline double min_objective(const Scenario& scenario, const ActionSet& s) {
  EvaluationCounter scratch;
  return min_objective(scenario, s, scratch);
}

}  // namespace robust_select

#endif  // ROBUST_SELECT_SCENARIO_HPP_
