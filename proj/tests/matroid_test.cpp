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

#include "robust_select/matroid.hpp"

#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace robust_select {
namespace {

MatroidSpec SmallPartition() {
  return MatroidSpec::partition(3, {{0}, {1, 2}}, std::size_t{1});
}

TEST(MatroidTest, IsIndependentExamples) {
  const MatroidSpec p = SmallPartition();
  EXPECT_TRUE(p.is_independent({0, 1}));
  EXPECT_FALSE(p.is_independent({1, 2}));
  EXPECT_TRUE(p.is_independent({}));
  EXPECT_TRUE(MatroidSpec::uniform(4, 2).is_independent({}));
  EXPECT_FALSE(MatroidSpec::uniform(4, 2).is_independent({0, 1, 3}));
}

TEST(MatroidTest, CanExtendExamples) {
  const MatroidSpec u = MatroidSpec::uniform(3, 1);
  EXPECT_TRUE(u.can_extend({}, 0));
  EXPECT_FALSE(u.can_extend({0}, 1));
  EXPECT_FALSE(SmallPartition().can_extend({1}, 2));
  // Never claims a self-extension.
  EXPECT_FALSE(MatroidSpec::uniform(3, 3).can_extend({1}, 1));
}

TEST(MatroidTest, IsBasisExamples) {
  EXPECT_TRUE(MatroidSpec::uniform(3, 1).is_basis({2}));
  EXPECT_FALSE(SmallPartition().is_basis({0}));
  EXPECT_TRUE(SmallPartition().is_basis({0, 2}));
  EXPECT_TRUE(MatroidSpec::uniform(0, 1).is_basis({}));
}

TEST(MatroidTest, ZeroCapacityOnlyAdmitsEmptySet) {
  const MatroidSpec m = MatroidSpec::partition(3, {{0, 1}, {2}}, std::size_t{0});
  EXPECT_TRUE(m.is_independent({}));
  EXPECT_TRUE(m.is_basis({}));
  for (ActionId e = 0; e < 3; ++e) EXPECT_FALSE(m.can_extend({}, e));
}

TEST(MatroidTest, PerBlockCapacities) {
  const MatroidSpec m = MatroidSpec::partition(4, {{0, 1}, {2, 3}}, {2, 0});
  EXPECT_TRUE(m.is_independent({0, 1}));
  EXPECT_FALSE(m.is_independent({2}));
  EXPECT_TRUE(m.is_basis({0, 1}));
}

TEST(MatroidTest, RejectsInvalidPartitions) {
  // Overlapping blocks.
  EXPECT_THROW(MatroidSpec::partition(3, {{0, 1}, {1, 2}}, std::size_t{1}),
               SpecError);
  // Action 2 uncovered.
  EXPECT_THROW(MatroidSpec::partition(3, {{0, 1}}, std::size_t{1}), SpecError);
  // Id outside the ground set.
  EXPECT_THROW(MatroidSpec::partition(2, {{0, 1, 5}}, std::size_t{1}),
               SpecError);
  EXPECT_THROW(MatroidSpec::partition(2, {{0}, {1}}, std::vector<std::size_t>{1}),
               SpecError);
  EXPECT_THROW(MatroidSpec::uniform(3, 0), SpecError);
}

TEST(MatroidAxiomsTest, Examples) {
  EXPECT_TRUE(check_matroid_axioms(MatroidSpec::uniform(4, 2)));
  EXPECT_TRUE(check_matroid_axioms(SmallPartition()));

  // {∅, {0,1}}: {0} ⊆ {0,1} is missing.
  auto corrupted = [](const ActionSet& s) {
    return s.empty() || s == ActionSet{0, 1};
  };
  auto violation = find_matroid_axiom_violation(2, corrupted);
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->axiom, 2);
}

TEST(MatroidAxiomsTest, DetectsExchangeFailure) {
  const MatroidSpec overlap =
      MatroidSpec::unchecked_partition(3, {{0, 1}, {1, 2}}, {1, 1});
  auto violation = find_matroid_axiom_violation(overlap);
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->axiom, 3);
  EXPECT_FALSE(check_matroid_axioms(overlap));
}

TEST(MatroidAxiomsTest, DetectsMissingEmptySet) {
  auto violation =
      find_matroid_axiom_violation(1, [](const ActionSet&) { return false; });
  ASSERT_TRUE(violation.has_value());
  EXPECT_EQ(violation->axiom, 1);
}

TEST(MatroidAxiomsTest, RefusesLargeGroundSets) {
  EXPECT_THROW(check_matroid_axioms(MatroidSpec::uniform(13, 2)), RefusalError);
  EXPECT_NO_THROW(check_matroid_axioms(MatroidSpec::uniform(12, 5)));
}

MatroidSpec RandomMatroid(std::mt19937_64& rng, std::size_t n) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  if (pick(0, 1) == 0) return MatroidSpec::uniform(n, pick(1, n));
  const std::size_t k = pick(1, n);
  std::vector<std::vector<ActionId>> blocks(k);
  for (ActionId j = 0; j < n; ++j) blocks[j < k ? j : pick(0, k - 1)].push_back(j);
  std::vector<std::size_t> caps(k);
  for (auto& c : caps) c = pick(0, 3);
  return MatroidSpec::partition(n, std::move(blocks), std::move(caps));
}

// Downward closure, exchange, and can_extend agreeing with
// is_independent, exhaustively for |V| <= 8.
TEST(MatroidAxiomsTest, RandomMatroidsSatisfyAxioms) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 8;
    const MatroidSpec m = RandomMatroid(rng, n);
    auto violation = find_matroid_axiom_violation(m);
    EXPECT_FALSE(violation.has_value()) << violation->describe();
    for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
      const ActionSet s = ActionSet::from_mask(mask);
      if (!m.is_independent(s)) continue;
      for (ActionId e = 0; e < n; ++e) {
        if (s.contains(e)) continue;
        EXPECT_EQ(m.can_extend(s, e), m.is_independent(s.with(e)));
      }
      bool extendable = false;
      for (ActionId e = 0; e < n; ++e) extendable |= m.can_extend(s, e);
      EXPECT_EQ(m.is_basis(s), !extendable);
    }
  }
}

}  // namespace
}  // namespace robust_select
