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

#ifndef ROBUST_SELECT_SURROGATE_HPP_
#define ROBUST_SELECT_SURROGATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "robust_select/errors.hpp"
#include "robust_select/oracle.hpp"
#include "robust_select/scenario.hpp"

namespace robust_select {

// Truncated average of the agents' objectives:
//
//   f(S; gamma) = (1/N) * sum_i min{h_i(S), gamma}
//
// Monotone submodular whenever every h_i is, with 0 <= f <= gamma and
// f(∅) = 0. Each evaluation costs N individual evaluations.
class SurrogateOracle : public CachingOracle<SurrogateOracle> {
 public:
  SurrogateOracle(const Scenario& scenario, double gamma)
      : scenario_(&scenario), gamma_(gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw ConfigError("surrogate truncation level must be finite and >= 0");
    }
  }

  double compute(const ActionSet& s) const {
    // gamma = 0 truncates everything; the call is still charged N units.
    if (gamma_ == 0.0) return 0.0;
    EvaluationCounter scratch;
    double sum = 0.0;
    for (std::size_t i = 0; i < scenario_->num_agents(); ++i) {
      sum += std::min(proximity_objective(*scenario_, i, s, scratch), gamma_);
    }
    return sum / static_cast<double>(scenario_->num_agents());
  }

  std::uint64_t evaluation_cost() const { return scenario_->num_agents(); }
  std::size_t ground_size() const { return scenario_->num_actions(); }
  double gamma() const { return gamma_; }
  const Scenario& scenario() const { return *scenario_; }

 private:
  const Scenario* scenario_;
  double gamma_;
};

}  // namespace robust_select

#endif  // ROBUST_SELECT_SURROGATE_HPP_
