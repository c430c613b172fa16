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

#ifndef ROBUST_SELECT_MATROID_HPP_
#define ROBUST_SELECT_MATROID_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robust_select/action_set.hpp"
#include "robust_select/errors.hpp"

namespace robust_select {

enum class MatroidKind { kUniform, kPartition };

// Independence oracle over the ground set {0, ..., M-1}.
//
// Uniform: S is independent iff |S| <= rank.
// Partition: the ground set is split into disjoint blocks V_j, each with a
// capacity z_j, and S is independent iff |S ∩ V_j| <= z_j for every j.
class MatroidSpec {
 public:
  static MatroidSpec uniform(std::size_t ground_size, std::size_t rank) {
    if (rank == 0) throw SpecError("uniform matroid rank must be positive");
    MatroidSpec m(MatroidKind::kUniform, ground_size);
    m.rank_ = rank;
    return m;
  }

  // One capacity per block.
  static MatroidSpec partition(std::size_t ground_size,
                               std::vector<std::vector<ActionId>> blocks,
                               std::vector<std::size_t> capacities) {
    MatroidSpec m = unchecked_partition(ground_size, std::move(blocks),
                                        std::move(capacities));
    m.validate_partition();
    return m;
  }

  // Every block shares capacity z.
  static MatroidSpec partition(std::size_t ground_size,
                               std::vector<std::vector<ActionId>> blocks,
                               std::size_t capacity) {
    std::vector<std::size_t> caps(blocks.size(), capacity);
    return partition(ground_size, std::move(blocks), std::move(caps));
  }

  // Skips the disjoint/covering checks. The result may not be a matroid;
  // used to build negative fixtures for the axiom checker.
  static MatroidSpec unchecked_partition(
      std::size_t ground_size, std::vector<std::vector<ActionId>> blocks,
      std::vector<std::size_t> capacities) {
    if (blocks.size() != capacities.size()) {
      throw SpecError("partition matroid needs one capacity per block");
    }
    MatroidSpec m(MatroidKind::kPartition, ground_size);
    m.memberships_.assign(ground_size, {});
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (ActionId id : blocks[b]) {
        if (id >= ground_size) {
          throw SpecError("partition block " + std::to_string(b) +
                          " references action " + std::to_string(id) +
                          " outside the ground set of size " +
                          std::to_string(ground_size));
        }
        m.memberships_[id].push_back(b);
      }
    }
    m.blocks_ = std::move(blocks);
    m.capacities_ = std::move(capacities);
    return m;
  }

  MatroidKind kind() const { return kind_; }
  std::size_t ground_size() const { return ground_size_; }
  std::size_t rank() const { return rank_; }
  const std::vector<std::vector<ActionId>>& blocks() const { return blocks_; }
  const std::vector<std::size_t>& capacities() const { return capacities_; }

  bool is_independent(const ActionSet& s) const {
    for (ActionId id : s) {
      if (id >= ground_size_) return false;
    }
    if (kind_ == MatroidKind::kUniform) return s.size() <= rank_;
    std::vector<std::size_t> used(blocks_.size(), 0);
    for (ActionId id : s) {
      for (std::size_t b : memberships_[id]) {
        if (++used[b] > capacities_[b]) return false;
      }
    }
    return true;
  }

  // True iff e is not in S and S ∪ {e} is independent. Assumes S is
  // independent.
  bool can_extend(const ActionSet& s, ActionId e) const {
    if (e >= ground_size_ || s.contains(e)) return false;
    if (kind_ == MatroidKind::kUniform) return s.size() + 1 <= rank_;
    for (std::size_t b : memberships_[e]) {
      if (capacities_[b] == 0) return false;
      std::size_t used = 0;
      for (ActionId id : s) {
        for (std::size_t ob : memberships_[id]) {
          if (ob == b) ++used;
        }
      }
      if (used + 1 > capacities_[b]) return false;
    }
    return true;
  }

  bool is_basis(const ActionSet& s) const {
    for (ActionId e = 0; e < ground_size_; ++e) {
      if (can_extend(s, e)) return false;
    }
    return true;
  }

 private:
  MatroidSpec(MatroidKind kind, std::size_t ground_size)
      : kind_(kind), ground_size_(ground_size) {}

  void validate_partition() const {
    for (ActionId id = 0; id < ground_size_; ++id) {
      if (memberships_[id].empty()) {
        throw SpecError("action " + std::to_string(id) +
                        " is not covered by any partition block");
      }
      if (memberships_[id].size() > 1) {
        throw SpecError("action " + std::to_string(id) +
                        " appears in more than one partition block");
      }
    }
  }

  MatroidKind kind_;
  std::size_t ground_size_ = 0;
  std::size_t rank_ = 0;
  std::vector<std::vector<ActionId>> blocks_;
  std::vector<std::size_t> capacities_;
  // Blocks containing each action; exactly one for a validated partition.
  std::vector<std::vector<std::size_t>> memberships_;
};

inline constexpr std::size_t kMaxAxiomCheckGround = 12;

struct AxiomViolation {
  int axiom = 0;  // 1: empty set, 2: downward closure, 3: exchange
  ActionSet a;
  ActionSet b;
  std::string describe() const {
    switch (axiom) {
      case 1:
        return "empty set is not independent";
      case 2:
        return "downward closure fails: subset of an independent set is "
               "dependent";
      default:
        return "exchange fails: no element of the larger set extends the "
               "smaller one";
    }
  }
};

// Exhaustively checks the three matroid axioms for an arbitrary
// independence predicate over {0, ..., n-1}. Returns the first violation
// found. For axiom 2, `a` is the dependent subset of independent `b`; for
// axiom 3, |b| < |a|.
template <class IndependencePredicate>
std::optional<AxiomViolation> find_matroid_axiom_violation(
    std::size_t ground_size, IndependencePredicate&& independent) {
  if (ground_size > kMaxAxiomCheckGround) {
    throw RefusalError("matroid axiom check is exhaustive; ground set of " +
                       std::to_string(ground_size) + " exceeds cap of " +
                       std::to_string(kMaxAxiomCheckGround));
  }
  const std::uint64_t count = std::uint64_t{1} << ground_size;
  std::vector<char> indep(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    indep[mask] = independent(ActionSet::from_mask(mask)) ? 1 : 0;
  }
  if (!indep[0]) return AxiomViolation{1, {}, {}};

  for (std::uint64_t b = 1; b < count; ++b) {
    if (!indep[b]) continue;
    // Proper submasks of b; checking one-element removals would suffice by
    // induction, but the full scan keeps this routine a literal oracle.
    for (std::uint64_t a = (b - 1) & b;; a = (a - 1) & b) {
      if (!indep[a]) {
        return AxiomViolation{2, ActionSet::from_mask(a),
                              ActionSet::from_mask(b)};
      }
      if (a == 0) break;
    }
  }

  for (std::uint64_t a = 0; a < count; ++a) {
    if (!indep[a]) continue;
    const int size_a = std::popcount(a);
    for (std::uint64_t b = 0; b < count; ++b) {
      if (!indep[b] || std::popcount(b) >= size_a) continue;
      bool exchanged = false;
      for (std::uint64_t rest = a & ~b; rest != 0; rest &= rest - 1) {
        if (indep[b | (rest & (~rest + 1))]) {
          exchanged = true;
          break;
        }
      }
      if (!exchanged) {
        return AxiomViolation{3, ActionSet::from_mask(a),
                              ActionSet::from_mask(b)};
      }
    }
  }
  return std::nullopt;
}

inline std::optional<AxiomViolation> find_matroid_axiom_violation(
    const MatroidSpec& m) {
  return find_matroid_axiom_violation(
      m.ground_size(), [&m](const ActionSet& s) { return m.is_independent(s); });
}

inline bool check_matroid_axioms(const MatroidSpec& m) {
  return !find_matroid_axiom_violation(m).has_value();
}

}  // namespace robust_select

#endif  // ROBUST_SELECT_MATROID_HPP_
