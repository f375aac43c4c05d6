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

#include "fbandit/dp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbandit {

const ValueTable::Entry* ValueTable::Find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void ValueTable::Insert(const std::string& key, const Entry& entry) {
  entries_.emplace(key, entry);
}

void ValueTable::Bind(const ValueQuery& query) {
  Root root{query.instance.prior(), query.wealth, query.horizon,
            query.utility.Describe()};
  if (!root_) {
    root_ = root;
    return;
  }
  if (root_->prior != root.prior || root_->wealth != root.wealth ||
      root_->horizon != root.horizon || root_->utility != root.utility) {
    throw std::logic_error("ValueTable reused across different queries");
  }
}

namespace {

// ---------------------------------------------------------------------------
// Policy evaluation

class PolicyEvaluator {
 public:
  PolicyEvaluator(const ValueQuery& query, const PolicySpec& policy)
      : query_(query), policy_(policy) {}

  double Run() {
    return Visit(query_.instance.prior_belief(), 0, 0, query_.wealth);
  }

 private:
  Arm Decide(const Belief& belief, int level, std::size_t node) const {
    if (const auto* named = std::get_if<NamedPolicy>(&policy_)) {
      const auto prefix = ForcedPrefix(*named);
      return level < static_cast<int>(prefix.size()) ? prefix[level]
                                                     : MyopicDecision(belief);
    }
    return std::get<DecisionTree>(policy_).arm(node);
  }

  double Visit(const Belief& belief, int level, std::size_t node,
               double wealth) const {
    if (level == query_.horizon) return query_.utility(wealth);
    const Arm arm = Decide(belief, level, node);
    const auto& instance = query_.instance;
    const auto alphabet = instance.alphabet();
    const std::size_t m = alphabet.size();
    double total = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      const double p = MixtureOutcomeProbAt(belief, arm, s, instance);
      if (p == 0.0) continue;
      const Belief next = PosteriorUpdateAt(belief, arm, s, instance);
      total += p * Visit(next, level + 1, node * m + 1 + s, wealth + alphabet[s]);
    }
    return total;
  }

  const ValueQuery& query_;
  const PolicySpec& policy_;
};

// ---------------------------------------------------------------------------
// Backward induction

class Solver {
 public:
  Solver(const ValueQuery& query, ValueTable* memo)
      : query_(query),
        memo_(memo),
        counts_(2 * query.instance.alphabet_size(), 0) {}

  ValueTable::Entry Solve(const Belief& belief, int remaining, double wealth) {
    std::string key;
    if (memo_) {
      key.assign(counts_.begin(), counts_.end());
      if (const auto* hit = memo_->Find(key)) return *hit;
    }
    ValueTable::Entry entry{0.0, Arm::kX, remaining, wealth, belief.xi()};
    if (remaining == 0) {
      entry.value = query_.utility(wealth);
    } else {
      const double vx = ArmValue(belief, Arm::kX, remaining, wealth);
      const double vy = ArmValue(belief, Arm::kY, remaining, wealth);
      const double slack = kTieTolerance * std::max({1.0, std::abs(vx), std::abs(vy)});
      entry.best_arm = vy > vx + slack ? Arm::kY : Arm::kX;
      entry.value = entry.best_arm == Arm::kX ? vx : vy;
    }
    if (memo_) memo_->Insert(key, entry);
    return entry;
  }

  // sum_s P(s | arm) V(posterior, remaining - 1, wealth + s).
  double ArmValue(const Belief& belief, Arm arm, int remaining, double wealth) {
    const auto& instance = query_.instance;
    const auto alphabet = instance.alphabet();
    const std::size_t m = alphabet.size();
    double total = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      const double p = MixtureOutcomeProbAt(belief, arm, s, instance);
      if (p == 0.0) continue;
      const Belief next = PosteriorUpdateAt(belief, arm, s, instance);
      Push(arm, s);
      total += p * Solve(next, remaining - 1, wealth + alphabet[s]).value;
      Pop(arm, s);
    }
    return total;
  }

  // Records / forgets one observation on the current path from the root.
  void Push(Arm arm, std::size_t outcome) { ++counts_[Slot(arm, outcome)]; }
  void Pop(Arm arm, std::size_t outcome) { --counts_[Slot(arm, outcome)]; }

 private:
  std::size_t Slot(Arm arm, std::size_t outcome) const {
    return (arm == Arm::kX ? 0 : query_.instance.alphabet_size()) + outcome;
  }

  const ValueQuery& query_;
  ValueTable* memo_;
  // Observation counts along the current path: [X outcomes..., Y outcomes...].
  // Each count is at most the horizon, which the CLI caps well below 256.
  std::vector<char> counts_;
};

void CheckCountRange(const ValueQuery& query) {
  if (query.horizon > 127) {
    throw InvalidParameters("horizon too large for exact backward induction");
  }
}

void FillOptimal(Solver& solver, const ValueQuery& query,
                 const std::optional<Belief>& belief, std::size_t node,
                 int level, double wealth, const DecisionTree& shape,
                 std::vector<Arm>& arms) {
  Arm arm = Arm::kX;
  if (belief) {
    arm = solver.Solve(*belief, query.horizon - level, wealth).best_arm;
  }
  arms[node] = arm;
  if (shape.is_leaf(node)) return;
  const auto alphabet = query.instance.alphabet();
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    std::optional<Belief> next;
    if (belief) next = TryPosteriorUpdateAt(*belief, arm, s, query.instance);
    solver.Push(arm, s);
    FillOptimal(solver, query, next, shape.child(node, s), level + 1,
                wealth + alphabet[s], shape, arms);
    solver.Pop(arm, s);
  }
}

}  // namespace

double EvaluatePolicy(const ValueQuery& query, const PolicySpec& policy) {
  query.Validate();
  CheckPolicyHorizon(policy, query.instance.alphabet_size(), query.horizon);
  return PolicyEvaluator(query, policy).Run();
}

OptimalValue ComputeOptimalValue(const ValueQuery& query, ValueTable* memo) {
  query.Validate();
  CheckCountRange(query);
  if (memo) memo->Bind(query);
  Solver solver(query, memo);
  const auto entry =
      solver.Solve(query.instance.prior_belief(), query.horizon, query.wealth);
  return {entry.value, entry.best_arm};
}

OptimalValue ComputeOptimalValue(const ValueQuery& query) {
  ValueTable memo;
  return ComputeOptimalValue(query, &memo);
}

DecisionTree OptimalPolicyTree(const ValueQuery& query) {
  query.Validate();
  CheckCountRange(query);
  ValueTable memo;
  memo.Bind(query);
  Solver solver(query, &memo);
  const std::size_t m = query.instance.alphabet_size();
  DecisionTree shape = DecisionTree::Uniform(m, query.horizon, Arm::kX);
  std::vector<Arm> arms(shape.node_count(), Arm::kX);
  FillOptimal(solver, query, query.instance.prior_belief(), 0, 0, query.wealth,
              shape, arms);
  return DecisionTree(m, query.horizon, std::move(arms));
}

}  // namespace fbandit
