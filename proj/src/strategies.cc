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

#include "fbandit/strategies.hpp"

#include <array>
#include <limits>

namespace fbandit {

// ---------------------------------------------------------------------------
// DecisionTree

std::size_t DecisionTree::NodeCount(std::size_t branching, int depth) {
  if (branching == 0) throw InvalidParameters("branching must be >= 1");
  if (depth < 1) throw InvalidParameters("tree depth must be >= 1");
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  std::size_t level = 1;
  for (int d = 0; d < depth; ++d) {
    if (total > kMax - level) throw InvalidParameters("tree too large");
    total += level;
    if (d + 1 < depth) {
      if (level > kMax / branching) throw InvalidParameters("tree too large");
      level *= branching;
    }
  }
  return total;
}

DecisionTree::DecisionTree(std::size_t branching, int depth,
                           std::vector<Arm> arms)
    : branching_(branching), depth_(depth), arms_(std::move(arms)) {
  const std::size_t expected = NodeCount(branching, depth);
  if (arms_.size() != expected) {
    throw InvalidParameters("decision tree of depth " + std::to_string(depth) +
                            " and branching " + std::to_string(branching) +
                            " needs " + std::to_string(expected) +
                            " nodes, got " + std::to_string(arms_.size()));
  }
  first_leaf_ = depth == 1 ? 0 : NodeCount(branching, depth - 1);
}

DecisionTree DecisionTree::Uniform(std::size_t branching, int depth, Arm arm) {
  return DecisionTree(branching, depth,
                      std::vector<Arm>(NodeCount(branching, depth), arm));
}

DecisionTree DecisionTree::Subtree(std::size_t outcome) const {
  if (depth_ < 2) throw HorizonTooSmall("a depth-1 tree has no subtrees");
  if (outcome >= branching_) throw InvalidParameters("outcome out of range");
  std::vector<Arm> arms;
  arms.reserve(NodeCount(branching_, depth_ - 1));
  // Level by level, the subtree rooted at `outcome` occupies a contiguous
  // block of b^level nodes.
  std::size_t level_begin = 1;
  std::size_t level_width = branching_;
  std::size_t block = 1;
  for (int d = 1; d < depth_; ++d) {
    const std::size_t start = level_begin + outcome * block;
    arms.insert(arms.end(), arms_.begin() + start,
                arms_.begin() + start + block);
    level_begin += level_width;
    level_width *= branching_;
    block *= branching_;
  }
  return DecisionTree(branching_, depth_ - 1, std::move(arms));
}

// ---------------------------------------------------------------------------
// Named policies

std::string ToString(NamedPolicy policy) {
  switch (policy) {
    case NamedPolicy::kMyopic:
      return "myopic";
    case NamedPolicy::kLFirst:
      return "lfirst";
    case NamedPolicy::kRFirst:
      return "rfirst";
    case NamedPolicy::kUSwap:
      return "uswap";
    case NamedPolicy::kVSwap:
      return "vswap";
  }
  return "unknown";
}

NamedPolicy ParseNamedPolicy(const std::string& text) {
  for (NamedPolicy p : {NamedPolicy::kMyopic, NamedPolicy::kLFirst,
                        NamedPolicy::kRFirst, NamedPolicy::kUSwap,
                        NamedPolicy::kVSwap}) {
    if (ToString(p) == text) return p;
  }
  throw InvalidParameters("unknown policy \"" + text +
                          "\" (expected myopic, lfirst, rfirst, uswap, vswap)");
}

std::string PolicyName(const PolicySpec& policy) {
  if (const auto* named = std::get_if<NamedPolicy>(&policy)) {
    return ToString(*named);
  }
  return "explicit";
}

std::span<const Arm> ForcedPrefix(NamedPolicy policy) {
  static constexpr std::array<Arm, 1> kX = {Arm::kX};
  static constexpr std::array<Arm, 1> kY = {Arm::kY};
  static constexpr std::array<Arm, 2> kXY = {Arm::kX, Arm::kY};
  static constexpr std::array<Arm, 2> kYX = {Arm::kY, Arm::kX};
  switch (policy) {
    case NamedPolicy::kMyopic:
      return {};
    case NamedPolicy::kLFirst:
      return kX;
    case NamedPolicy::kRFirst:
      return kY;
    case NamedPolicy::kUSwap:
      return kXY;
    case NamedPolicy::kVSwap:
      return kYX;
  }
  return {};
}

void CheckPolicyHorizon(const PolicySpec& policy, std::size_t alphabet_size,
                        int horizon) {
  if (horizon < 1) throw InvalidParameters("horizon must be >= 1");
  if (const auto* named = std::get_if<NamedPolicy>(&policy)) {
    const auto prefix = ForcedPrefix(*named);
    if (static_cast<int>(prefix.size()) > horizon) {
      throw HorizonTooSmall(ToString(*named) + " needs horizon >= " +
                            std::to_string(prefix.size()));
    }
    return;
  }
  const auto& tree = std::get<DecisionTree>(policy);
  if (tree.depth() != horizon) {
    throw PolicyHorizonMismatch("tree depth " + std::to_string(tree.depth()) +
                                " != horizon " + std::to_string(horizon));
  }
  if (tree.branching() != alphabet_size) {
    throw PolicyHorizonMismatch(
        "tree branching " + std::to_string(tree.branching()) +
        " != alphabet size " + std::to_string(alphabet_size));
  }
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

void ExpandNode(NamedPolicy policy, const BanditInstance& instance,
                const std::optional<Belief>& belief, std::size_t node,
                int level, DecisionTree& scratch, std::vector<Arm>& arms) {
  const auto prefix = ForcedPrefix(policy);
  Arm arm = Arm::kX;
  if (belief) {
    arm = level < static_cast<int>(prefix.size()) ? prefix[level]
                                                  : MyopicDecision(*belief);
  }
  arms[node] = arm;
  if (scratch.is_leaf(node)) return;
  for (std::size_t c = 0; c < instance.alphabet_size(); ++c) {
    std::optional<Belief> next;
    if (belief) next = TryPosteriorUpdateAt(*belief, arm, c, instance);
    ExpandNode(policy, instance, next, scratch.child(node, c), level + 1,
               scratch, arms);
  }
}

}  // namespace

DecisionTree ExpandPolicy(const PolicySpec& policy,
                          const BanditInstance& instance, int horizon) {
  CheckPolicyHorizon(policy, instance.alphabet_size(), horizon);
  if (const auto* tree = std::get_if<DecisionTree>(&policy)) return *tree;
  const NamedPolicy named = std::get<NamedPolicy>(policy);
  DecisionTree shape =
      DecisionTree::Uniform(instance.alphabet_size(), horizon, Arm::kX);
  std::vector<Arm> arms(shape.node_count(), Arm::kX);
  ExpandNode(named, instance, instance.prior_belief(), 0, 0, shape, arms);
  return DecisionTree(instance.alphabet_size(), horizon, std::move(arms));
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t StrategyCount(std::size_t alphabet_size, int horizon) {
  if (alphabet_size == 0 || horizon < 1) {
    throw InvalidParameters("alphabet size and horizon must be positive");
  }
  // T(n) = 2^NodeCount(m, n); saturate when the exponent reaches 64.
  std::uint64_t nodes = 0;
  std::uint64_t level = 1;
  for (int d = 0; d < horizon; ++d) {
    nodes += level;
    if (nodes >= 64) return UINT64_MAX;
    level *= alphabet_size;
    if (level >= 64 && d + 1 < horizon) return UINT64_MAX;
  }
  return std::uint64_t{1} << nodes;
}

StrategyEnumerator::StrategyEnumerator(std::size_t alphabet_size, int horizon,
                                       std::uint64_t cap)
    : alphabet_size_(alphabet_size),
      horizon_(horizon),
      count_(StrategyCount(alphabet_size, horizon)) {
  if (count_ > cap) throw EnumerationTooLarge(count_, cap);
}

std::optional<DecisionTree> StrategyEnumerator::Next() {
  if (next_ >= count_) return std::nullopt;
  const std::size_t nodes = DecisionTree::NodeCount(alphabet_size_, horizon_);
  std::vector<Arm> arms(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    arms[j] = ((next_ >> j) & 1u) ? Arm::kY : Arm::kX;
  }
  ++next_;
  return DecisionTree(alphabet_size_, horizon_, std::move(arms));
}

StrategyEnumerator EnumerateStrategies(std::size_t alphabet_size, int horizon,
                                       std::uint64_t cap) {
  return StrategyEnumerator(alphabet_size, horizon, cap);
}

// ---------------------------------------------------------------------------
// Path-enumeration evaluation and brute force

namespace {

// Per-arm masses under each hypothesis, indexed [arm][outcome].
struct MassTable {
  std::array<std::vector<double>, 2> h1;
  std::array<std::vector<double>, 2> h2;

  explicit MassTable(const BanditInstance& instance) {
    for (Arm arm : {Arm::kX, Arm::kY}) {
      const auto a = static_cast<std::size_t>(arm);
      for (std::size_t s = 0; s < instance.alphabet_size(); ++s) {
        h1[a].push_back(instance.mass(Hypothesis::kH1, arm, s));
        h2[a].push_back(instance.mass(Hypothesis::kH2, arm, s));
      }
    }
  }
};

// phi(x + payoff sum) for every complete outcome path, with path id
// sum_t c_t * m^(n-1-t).
std::vector<double> TerminalUtilities(const ValueQuery& query) {
  const auto alphabet = query.instance.alphabet();
  const std::size_t m = alphabet.size();
  std::vector<double> wealth{query.wealth};
  for (int t = 0; t < query.horizon; ++t) {
    std::vector<double> next;
    next.reserve(wealth.size() * m);
    for (double w : wealth) {
      for (double v : alphabet) next.push_back(w + v);
    }
    wealth = std::move(next);
  }
  std::vector<double> phi;
  phi.reserve(wealth.size());
  for (double w : wealth) phi.push_back(query.utility(w));
  return phi;
}

// Depth-first walk over the outcome paths of a tree whose arm at node j is
// given by `arm_of(j)`.
template <typename ArmOf>
class PathSummer {
 public:
  PathSummer(const ValueQuery& query, const MassTable& masses,
             const std::vector<double>& terminal, ArmOf arm_of)
      : m_(query.instance.alphabet_size()),
        horizon_(query.horizon),
        xi0_(query.instance.prior()),
        masses_(masses),
        terminal_(terminal),
        arm_of_(arm_of) {}

  double Sum() { return Visit(0, 0, 0, 1.0, 1.0); }

 private:
  double Visit(std::size_t node, int level, std::size_t path, double p1,
               double p2) {
    const auto a = static_cast<std::size_t>(arm_of_(node));
    const auto& m1 = masses_.h1[a];
    const auto& m2 = masses_.h2[a];
    double total = 0.0;
    const bool last = level + 1 == horizon_;
    for (std::size_t c = 0; c < m_; ++c) {
      const double q1 = p1 * m1[c];
      const double q2 = p2 * m2[c];
      if (q1 == 0.0 && q2 == 0.0) continue;
      const std::size_t id = path * m_ + c;
      if (last) {
        total += terminal_[id] * (xi0_ * q1 + (1.0 - xi0_) * q2);
      } else {
        total += Visit(node * m_ + 1 + c, level + 1, id, q1, q2);
      }
    }
    return total;
  }

  std::size_t m_;
  int horizon_;
  double xi0_;
  const MassTable& masses_;
  const std::vector<double>& terminal_;
  ArmOf arm_of_;
};

}  // namespace

double EvaluateTreeByPaths(const ValueQuery& query, const DecisionTree& tree) {
  query.Validate();
  CheckPolicyHorizon(tree, query.instance.alphabet_size(), query.horizon);
  const MassTable masses(query.instance);
  const std::vector<double> terminal = TerminalUtilities(query);
  auto arm_of = [&tree](std::size_t node) { return tree.arm(node); };
  PathSummer<decltype(arm_of)> summer(query, masses, terminal, arm_of);
  return summer.Sum();
}

BruteForceResult BruteForceValue(const ValueQuery& query, std::uint64_t cap) {
  query.Validate();
  const std::size_t m = query.instance.alphabet_size();
  const std::uint64_t count = StrategyCount(m, query.horizon);
  if (count > cap) throw EnumerationTooLarge(count, cap);

  const MassTable masses(query.instance);
  const std::vector<double> terminal = TerminalUtilities(query);
  std::uint64_t mask = 0;
  auto arm_of = [&mask](std::size_t node) {
    return ((mask >> node) & 1u) ? Arm::kY : Arm::kX;
  };
  PathSummer<decltype(arm_of)> summer(query, masses, terminal, arm_of);

  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  for (mask = 0; mask < count; ++mask) {
    const double w = summer.Sum();
    if (w > best) {
      best = w;
      best_mask = mask;
    }
  }
  const std::size_t nodes = DecisionTree::NodeCount(m, query.horizon);
  std::vector<Arm> arms(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    arms[j] = ((best_mask >> j) & 1u) ? Arm::kY : Arm::kX;
  }
  return {best, DecisionTree(m, query.horizon, std::move(arms))};
}

}  // namespace fbandit
