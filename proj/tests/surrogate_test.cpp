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

#include "robust_select/surrogate.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "robust_select/invariants.hpp"

namespace robust_select {
namespace {

constexpr double kEps = 1e-9;
const double kRoot50 = std::sqrt(50.0);

Scenario TinyScenario() {
  return Scenario({{0, 0}, {10, 0}}, {{0, 0}, {10, 0}, {5, 5}},
                  MatroidSpec::uniform(3, 1));
}

TEST(SurrogateTest, EvaluateExamples) {
  const Scenario s = TinyScenario();
  SurrogateOracle at5(s, 5.0);
  EXPECT_NEAR(at5.evaluate({2}), 5.0, kEps);
  SurrogateOracle at8(s, 8.0);
  EXPECT_NEAR(at8.evaluate({2}), 7.0711, 1e-4);
  SurrogateOracle at0(s, 0.0);
  EXPECT_EQ(at0.evaluate({0, 1, 2}), 0.0);
  EXPECT_EQ(at0.evaluate({}), 0.0);
}

TEST(SurrogateTest, EvaluateChargesNPerCall) {
  const Scenario s = TinyScenario();
  SurrogateOracle f(s, 8.0);
  f.evaluate({1});
  f.evaluate({});
  EXPECT_EQ(f.counter().individual(), 4u);
  // Truncation at zero short-circuits but is still charged.
  SurrogateOracle zero(s, 0.0);
  zero.evaluate({1});
  EXPECT_EQ(zero.counter().individual(), 2u);
}

TEST(SurrogateTest, RejectsNegativeGamma) {
  const Scenario s = TinyScenario();
  EXPECT_THROW(SurrogateOracle(s, -1.0), ConfigError);
  EXPECT_THROW(SurrogateOracle(s, INFINITY), ConfigError);
}

TEST(MarginalGainTest, Examples) {
  const Scenario s = TinyScenario();
  SurrogateOracle f(s, 8.0);
  EXPECT_NEAR(f.marginal_gain({}, 2), kRoot50, kEps);
  // Agent 0 stays at sqrt(50); agent 1 rises to 10, truncated to 8.
  EXPECT_NEAR(f.marginal_gain({2}, 0), 0.5 * (8.0 - kRoot50), kEps);
  EXPECT_NEAR(f.marginal_gain({2}, 0), 0.4645, 1e-4);
  EXPECT_EQ(f.marginal_gain({2}, 2), 0.0);
}

TEST(MarginalGainTest, CacheSavesBaseEvaluation) {
  const Scenario s = TinyScenario();
  SurrogateOracle f(s, 8.0);
  f.marginal_gain({2}, 0);  // f({2}) and f({0,2})
  EXPECT_EQ(f.counter().individual(), 4u);
  f.marginal_gain({2}, 1);  // f({2}) cached
  EXPECT_EQ(f.counter().individual(), 6u);
  // The last extension becomes the next base for free.
  f.marginal_gain({1, 2}, 0);
  EXPECT_EQ(f.counter().individual(), 8u);
}

TEST(MarginalGainTest, CachedMatchesUncachedBitForBit) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const Scenario s = invariants::random_small_scenario(rng, {3, 6});
    for (double gamma : invariants::gamma_grid(s)) {
      SurrogateOracle cached(s, gamma);
      SurrogateOracle fresh(s, gamma);
      ActionSet base;
      for (ActionId e = 0; e < s.num_actions(); ++e) {
        for (ActionId o = 0; o < s.num_actions(); ++o) {
          if (base.contains(o)) continue;
          const double expected = fresh.evaluate(base.with(o)) - fresh.evaluate(base);
          EXPECT_EQ(cached.marginal_gain(base, o), expected);
        }
        base.insert(e);
      }
    }
  }
}

TEST(CurvatureTest, Examples) {
  FunctionOracle modular(3, [](const ActionSet& s) {
    double w = 0;
    for (ActionId e : s) w += 1.0 + e;
    return w;
  });
  EXPECT_NEAR(compute_curvature(modular).value, 0.0, kEps);

  FunctionOracle capped(2, [](const ActionSet& s) {
    return std::min<double>(static_cast<double>(s.size()), 1.0);
  });
  EXPECT_EQ(compute_curvature(capped).value, 1.0);

  FunctionOracle zero(4, [](const ActionSet&) { return 0.0; });
  const CurvatureResult z = compute_curvature(zero);
  EXPECT_EQ(z.value, 0.0);
  EXPECT_FALSE(z.out_of_range);
}

TEST(CurvatureTest, CostsGroundSizePlusTwoAtMost) {
  FunctionOracle capped(5, [](const ActionSet& s) {
    return std::min<double>(static_cast<double>(s.size()), 2.0);
  });
  compute_curvature(capped);
  EXPECT_LE(capped.counter().individual(), 1u + 2u * 5u);
}

TEST(CurvatureTest, FlagsNonSubmodularOracle) {
  FunctionOracle square(2, [](const ActionSet& s) {
    return static_cast<double>(s.size() * s.size());
  });
  const CurvatureResult c = compute_curvature(square);
  EXPECT_TRUE(c.out_of_range);
  EXPECT_EQ(c.value, 0.0);
  EXPECT_NEAR(c.raw, -2.0, kEps);
}

TEST(CurvatureTest, RefusesLargeGroundSets) {
  FunctionOracle big(21, [](const ActionSet&) { return 1.0; });
  EXPECT_THROW(compute_curvature(big), RefusalError);
}

TEST(CurvatureTest, SurrogateCurvatureInUnitInterval) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 40; ++k) {
    const Scenario s = invariants::random_small_scenario(rng, {3, 6});
    for (double gamma : invariants::gamma_grid(s)) {
      SurrogateOracle f(s, gamma);
      const CurvatureResult c = compute_curvature(f);
      EXPECT_FALSE(c.out_of_range) << "raw " << c.raw;
      EXPECT_GE(c.value, 0.0);
      EXPECT_LE(c.value, 1.0);
    }
  }
}

// Exhaustive submodularity, monotonicity and the bounds
// (1/N) min{min_i h_i(S), gamma} <= f(S) <= gamma on random instances.
TEST(SurrogateTest, StructuralPropertiesExhaustive) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 60; ++k) {
    const Scenario s = invariants::random_small_scenario(rng, {3, 6});
    invariants::Report report;
    invariants::check_structure(s, report);
    ASSERT_TRUE(report.ok()) << report.first_failure()->check << ": "
                             << report.first_failure()->detail;
  }
}

TEST(SurrogateTest, SaturatesExactlyWhenAllAgentsReachGamma) {
  const Scenario s = TinyScenario();
  SurrogateOracle f(s, 7.0);
  EXPECT_EQ(f.evaluate({2}), 7.0);     // both at sqrt(50) > 7
  EXPECT_LT(f.evaluate({0}), 7.0);     // agent 0 at distance 0
  EXPECT_EQ(f.evaluate({0, 1}), 7.0);  // both reach 10
}

}  // namespace
}  // namespace robust_select
