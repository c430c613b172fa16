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

#ifndef ROBUST_SELECT_ORACLE_HPP_
#define ROBUST_SELECT_ORACLE_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "robust_select/action_set.hpp"
#include "robust_select/errors.hpp"
#include "robust_select/matroid.hpp"
#include "robust_select/scenario.hpp"

namespace robust_select {

// Anything that evaluates a set function over {0, ..., M-1} and counts
// its own evaluations.
template <class O>
concept SetFunctionOracle = requires(O& o, const O& co, const ActionSet& s) {
  { o.evaluate(s) } -> std::convertible_to<double>;
  { co.ground_size() } -> std::convertible_to<std::size_t>;
  { co.counter() } -> std::convertible_to<const EvaluationCounter&>;
};

// A set-function oracle that can also answer marginal gains, reusing a
// remembered value of the base set.
template <class O>
concept MarginalGainOracle =
    SetFunctionOracle<O> && requires(O& o, const ActionSet& s, ActionId e) {
      { o.cached_value(s) } -> std::convertible_to<double>;
      { o.marginal_gain(s, e) } -> std::convertible_to<double>;
      { o.marginal_gain_with_value(s, e).extended_value } ->
          std::convertible_to<double>;
      o.remember(s, 0.0);
    };

// CRTP base implementing counting, the value cache and marginal gains.
// Derived supplies:
//   double compute(const ActionSet&) const;     uncounted evaluation
//   std::uint64_t evaluation_cost() const;      counter units per call
//   std::size_t ground_size() const;
//
// The cache holds two entries: the last base set whose value was looked up
// and the last extension S ∪ {e} evaluated by marginal_gain. A greedy pass
// that accepts e therefore finds f(S ∪ {e}) already known when it moves on
// to the enlarged base set.
template <class Derived>
class CachingOracle {
 public:
  // Always recomputes and counts.
  double evaluate(const ActionSet& s) {
    counter_.add(self().evaluation_cost());
    return self().compute(s);
  }

  // f(S), served from the cache when S was seen last.
  double cached_value(const ActionSet& s) {
    if (base_ && base_->first == s) return base_->second;
    if (extension_ && extension_->first == s) {
      base_ = std::move(extension_);
      extension_.reset();
      return base_->second;
    }
    const double v = evaluate(s);
    base_.emplace(s, v);
    return v;
  }

  struct Gain {
    double gain = 0.0;
    double extended_value = 0.0;  // f(S ∪ {e})
  };

  // f(e | S) together with f(S ∪ {e}). Zero gain, without evaluating, if
  // e ∈ S.
  Gain marginal_gain_with_value(const ActionSet& s, ActionId e) {
    const double base = cached_value(s);
    if (s.contains(e)) return {0.0, base};
    ActionSet ext = s.with(e);
    const double v = evaluate(ext);
    extension_.emplace(std::move(ext), v);
    return {v - base, v};
  }

  // f(e | S) = f(S ∪ {e}) - f(S).
  double marginal_gain(const ActionSet& s, ActionId e) {
    if (s.contains(e)) return 0.0;
    return marginal_gain_with_value(s, e).gain;
  }

  // Records a value computed elsewhere by this same oracle (for example a
  // singleton evaluated while scanning for the largest one).
  void remember(ActionSet s, double value) {
    extension_.emplace(std::move(s), value);
  }

  const EvaluationCounter& counter() const { return counter_; }

 protected:
  CachingOracle() = default;

 private:
  Derived& self() { return static_cast<Derived&>(*this); }

  EvaluationCounter counter_;
  std::optional<std::pair<ActionSet, double>> base_;
  std::optional<std::pair<ActionSet, double>> extension_;
};

// Wraps an arbitrary callable; each evaluation costs one counter unit.
class FunctionOracle : public CachingOracle<FunctionOracle> {
 public:
  FunctionOracle(std::size_t ground_size,
                 std::function<double(const ActionSet&)> fn)
      : ground_size_(ground_size), fn_(std::move(fn)) {}

  double compute(const ActionSet& s) const { return fn_(s); }
  std::uint64_t evaluation_cost() const { return 1; }
  std::size_t ground_size() const { return ground_size_; }

 private:
  std::size_t ground_size_;
  std::function<double(const ActionSet&)> fn_;
};

inline constexpr std::size_t kMaxCurvatureGround = 20;

struct CurvatureResult {
  double value = 0.0;
  // Raw value fell outside [0, 1] before clamping; the oracle is not
  // monotone submodular or rounding noise is large.
  bool out_of_range = false;
  double raw = 0.0;
};

// c_f = 1 - min_{a : f(a) > 0} (f(V) - f(V \ a)) / f(a), clamped to [0, 1].
// Zero when no singleton has positive value.
template <SetFunctionOracle O>
CurvatureResult compute_curvature(O& oracle) {
  const std::size_t n = oracle.ground_size();
  if (n > kMaxCurvatureGround) {
    throw RefusalError("curvature needs |V| + 2 evaluations; ground set of " +
                       std::to_string(n) + " exceeds cap of " +
                       std::to_string(kMaxCurvatureGround));
  }
  const ActionSet ground = ActionSet::full(n);
  const double full = oracle.evaluate(ground);
  std::optional<double> min_ratio;
  for (ActionId a = 0; a < n; ++a) {
    const double single = oracle.evaluate(ActionSet{a});
    if (!(single > 0.0)) continue;
    const double ratio = (full - oracle.evaluate(ground.without(a))) / single;
    if (!min_ratio || ratio < *min_ratio) min_ratio = ratio;
  }
  CurvatureResult out;
  if (!min_ratio) return out;
  out.raw = 1.0 - *min_ratio;
  out.out_of_range = out.raw < 0.0 || out.raw > 1.0;
  out.value = std::clamp(out.raw, 0.0, 1.0);
  return out;
}

inline constexpr std::size_t kMaxBruteForceGround = 20;

// Exhaustive maximizer of a set function over the independent sets of `m`.
// Ties go to the smaller set, then to the lexicographically smaller one.
template <SetFunctionOracle O>
std::pair<ActionSet, double> brute_force_maximize(O& oracle,
                                                  const MatroidSpec& m) {
  const std::size_t n = m.ground_size();
  if (n > kMaxBruteForceGround) {
    throw RefusalError("brute force enumerates 2^M subsets; M = " +
                       std::to_string(n) + " exceeds cap of " +
                       std::to_string(kMaxBruteForceGround));
  }
  ActionSet best;
  double best_value = oracle.evaluate(best);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    ActionSet s = ActionSet::from_mask(mask);
    if (!m.is_independent(s)) continue;
    const double v = oracle.evaluate(s);
    if (v > best_value ||
        (v == best_value && ActionSet::canonical_less(s, best))) {
      best = std::move(s);
      best_value = v;
    }
  }
  return {best, best_value};
}

}  // namespace robust_select

#endif  // ROBUST_SELECT_ORACLE_HPP_
