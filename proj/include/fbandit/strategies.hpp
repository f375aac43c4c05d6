// Copyright 2026 The fbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FBANDIT_STRATEGIES_HPP_
#define FBANDIT_STRATEGIES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fbandit/model.hpp"

namespace fbandit {

// A deterministic strategy for an n-trial bandit: the arm pulled at every
// outcome history. Histories only record payoffs; the arm sequence along a
// path is implied by the tree itself.
//
// Stored as a complete `branching`-ary tree of depth `depth` in level order:
// the root is node 0 and the child for outcome c of node i is
// i * branching + 1 + c. Nodes on the last level are leaves.
class DecisionTree {
 public:
  // Throws InvalidParameters when `arms` does not hold exactly
  // NodeCount(branching, depth) entries.
  DecisionTree(std::size_t branching, int depth, std::vector<Arm> arms);

  static DecisionTree Uniform(std::size_t branching, int depth, Arm arm);

  // 1 + b + ... + b^(depth-1). Throws InvalidParameters on overflow.
  static std::size_t NodeCount(std::size_t branching, int depth);

  std::size_t branching() const { return branching_; }
  int depth() const { return depth_; }
  std::size_t node_count() const { return arms_.size(); }
  std::span<const Arm> arms() const { return arms_; }

  Arm arm(std::size_t node = 0) const { return arms_[node]; }
  std::size_t child(std::size_t node, std::size_t outcome) const {
    return node * branching_ + 1 + outcome;
  }
  bool is_leaf(std::size_t node) const { return node >= first_leaf_; }

  // The horizon-(n-1) strategy followed after observing `outcome` first.
  // Requires depth() >= 2.
  DecisionTree Subtree(std::size_t outcome) const;

  bool operator==(const DecisionTree& other) const = default;

 private:
  std::size_t branching_;
  int depth_;
  std::size_t first_leaf_;
  std::vector<Arm> arms_;
};

// The named strategies. kLFirst/kRFirst pull X/Y first and then play
// myopically; kUSwap/kVSwap pull X,Y / Y,X first and then play myopically.
enum class NamedPolicy { kMyopic, kLFirst, kRFirst, kUSwap, kVSwap };

using PolicySpec = std::variant<NamedPolicy, DecisionTree>;

std::string ToString(NamedPolicy policy);
NamedPolicy ParseNamedPolicy(const std::string& text);
std::string PolicyName(const PolicySpec& policy);

// The arms a named policy pulls before switching to the myopic rule.
std::span<const Arm> ForcedPrefix(NamedPolicy policy);

// Throws HorizonTooSmall or PolicyHorizonMismatch when `policy` cannot be
// played over `horizon` trials on an alphabet of `alphabet_size` outcomes.
void CheckPolicyHorizon(const PolicySpec& policy, std::size_t alphabet_size,
                        int horizon);

// X iff xi >= 1/2, i.e. w1 >= w2.
inline Arm MyopicDecision(const Belief& belief) {
  return belief.w1() >= belief.w2() ? Arm::kX : Arm::kY;
}

// The explicit tree realized by `policy` on `instance` when starting from the
// instance prior. Beliefs are tracked along every outcome path. Subtrees
// below an outcome of probability zero are unreachable and filled with X.
DecisionTree ExpandPolicy(const PolicySpec& policy,
                          const BanditInstance& instance, int horizon);

// Number of deterministic trees T(n) with T(1) = 2, T(n) = 2 T(n-1)^m;
// saturates at UINT64_MAX.
std::uint64_t StrategyCount(std::size_t alphabet_size, int horizon);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Streams every DecisionTree of a given shape exactly once. The i-th tree
// has node j pulling Y iff bit j of i is set.
class StrategyEnumerator {
 public:
  // Throws EnumerationTooLarge if StrategyCount exceeds `cap`.
  StrategyEnumerator(std::size_t alphabet_size, int horizon,
                     std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t count() const { return count_; }
  std::optional<DecisionTree> Next();

 private:
  std::size_t alphabet_size_;
  int horizon_;
  std::uint64_t count_;
  std::uint64_t next_ = 0;
};

StrategyEnumerator EnumerateStrategies(
    std::size_t alphabet_size, int horizon,
    std::uint64_t cap = kDefaultEnumerationCap);

// W(xi0, n, x, tree) by enumerating all outcome paths:
//   sum over paths of phi(x + payoffs) * (xi0 P1(path) + (1 - xi0) P2(path)).
// Never touches posteriors, so it is independent of the recursive evaluator.
double EvaluateTreeByPaths(const ValueQuery& query, const DecisionTree& tree);

struct BruteForceResult {
  double value;
  DecisionTree best_tree;
};

// sup over all deterministic trees, by exhaustive enumeration. The first
// maximizer in enumeration order is returned.
BruteForceResult BruteForceValue(const ValueQuery& query,
                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace fbandit

#endif  // FBANDIT_STRATEGIES_HPP_
