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

#include "robust_select/invariants.hpp"

#include <random>

#include "gtest/gtest.h"

namespace robust_select::invariants {
namespace {

TEST(RandomSmallScenarioTest, RespectsShape) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const Scenario s = random_small_scenario(rng, {2, 5});
    EXPECT_GE(s.num_agents(), 1u);
    EXPECT_LE(s.num_agents(), 2u);
    EXPECT_GE(s.num_actions(), 1u);
    EXPECT_LE(s.num_actions(), 5u);
    EXPECT_TRUE(check_matroid_axioms(s.constraint()));
  }
}

TEST(GammaGridTest, IncludesZeroAndUpperBound) {
  const Scenario s({{0, 0}}, {{3, 4}}, MatroidSpec::uniform(1, 1));
  const auto grid = gamma_grid(s);
  ASSERT_EQ(grid.size(), 6u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_DOUBLE_EQ(grid.back(), 5.0);
}

TEST(SubmodularityCheckTest, FlagsSupermodularTable) {
  // f(S) = |S|^2 over two elements.
  EXPECT_TRUE(find_submodularity_violation(2, {0, 1, 1, 4}).has_value());
  // f(S) = min(|S|, 1).
  EXPECT_FALSE(find_submodularity_violation(2, {0, 1, 1, 1}).has_value());
  // Decreasing.
  EXPECT_TRUE(find_submodularity_violation(1, {1, 0}).has_value());
}

TEST(RunChecksTest, CorruptFixtureIsReported) {
  CheckOptions options;
  options.instances = 0;
  options.inject_corrupt_matroid = true;
  const Report report = run_checks(options);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.first_failure()->check, "matroid_axioms");
  EXPECT_EQ(report.first_failure()->scenario.at("matroid").at("blocks"),
            Json::parse("[[0,1],[1,2]]"));
}

TEST(RunChecksTest, RefusesLargeInstances) {
  CheckOptions options;
  options.max_actions = 8;
  EXPECT_THROW(run_checks(options), RefusalError);
}

TEST(RunChecksTest, StructuralChecksPass) {
  CheckOptions options;
  options.instances = 25;
  options.seed = 4;
  const Report report = run_checks(options);
  for (const auto& [name, tally] : report.tallies()) {
    if (name == "robust_ratio_bound") continue;  // see acceptance suite
    EXPECT_EQ(tally.second, 0u) << name;
    EXPECT_GT(tally.first, 0u) << name;
  }
}

}  // namespace
}  // namespace robust_select::invariants
