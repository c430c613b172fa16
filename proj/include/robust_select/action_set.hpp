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

#ifndef ROBUST_SELECT_ACTION_SET_HPP_
#define ROBUST_SELECT_ACTION_SET_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace robust_select {

// Index of an action in the ground set, dense in [0, M).
using ActionId = std::uint32_t;

// A subset of the ground set, stored as a sorted vector of unique ids.
// Sets in this problem are small (a matroid basis), so a flat vector beats
// both bitsets and node-based containers for every operation we need.
class ActionSet {
 public:
  using const_iterator = std::vector<ActionId>::const_iterator;

  ActionSet() = default;
  ActionSet(std::initializer_list<ActionId> ids) : ids_(ids) { normalize(); }
  explicit ActionSet(std::vector<ActionId> ids) : ids_(std::move(ids)) {
    normalize();
  }

  // Set of the first `n` ids, i.e. the whole ground set of size n.
  static ActionSet full(std::size_t n) {
    ActionSet s;
    s.ids_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.ids_[i] = static_cast<ActionId>(i);
    return s;
  }

  // Bit j of `mask` selects action j. Only meaningful for ground sets <= 64.
  static ActionSet from_mask(std::uint64_t mask) {
    ActionSet s;
    for (ActionId j = 0; mask != 0; ++j, mask >>= 1) {
      if (mask & 1u) s.ids_.push_back(j);
    }
    return s;
  }

  std::uint64_t to_mask() const {
    std::uint64_t mask = 0;
    for (ActionId id : ids_) mask |= std::uint64_t{1} << id;
    return mask;
  }

  bool contains(ActionId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  // Returns false if `id` was already present.
  bool insert(ActionId id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it != ids_.end() && *it == id) return false;
    ids_.insert(it, id);
    return true;
  }

  bool erase(ActionId id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return false;
    ids_.erase(it);
    return true;
  }

  ActionSet with(ActionId id) const {
    ActionSet copy = *this;
    copy.insert(id);
    return copy;
  }

  ActionSet without(ActionId id) const {
    ActionSet copy = *this;
    copy.erase(id);
    return copy;
  }

  bool is_subset_of(const ActionSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                         ids_.end());
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const_iterator begin() const { return ids_.begin(); }
  const_iterator end() const { return ids_.end(); }
  const std::vector<ActionId>& ids() const { return ids_; }

  friend bool operator==(const ActionSet&, const ActionSet&) = default;

  // Smaller cardinality first, then lexicographic by sorted ids.
  static bool canonical_less(const ActionSet& a, const ActionSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.ids_.begin(), a.ids_.end(),
                                        b.ids_.begin(), b.ids_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const ActionSet& s) {
    os << '{';
    for (std::size_t i = 0; i < s.ids_.size(); ++i) {
      if (i) os << ',';
      os << s.ids_[i];
    }
    return os << '}';
  }

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<ActionId> ids_;
};

}  // namespace robust_select

#endif  // ROBUST_SELECT_ACTION_SET_HPP_
