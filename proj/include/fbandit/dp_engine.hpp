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

#ifndef FBANDIT_DP_ENGINE_HPP_
#define FBANDIT_DP_ENGINE_HPP_

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "fbandit/model.hpp"
#include "fbandit/strategies.hpp"

namespace fbandit {

// Memo for the backward induction of one ValueQuery.
//
// A state is keyed by how often each alphabet outcome has been observed on
// each arm. The belief reached is xi0 times a product of likelihood ratios
// over those counts and the wealth is x plus the observed payoffs, so the key
// determines (belief, remaining trials, wealth) exactly.
class ValueTable {
 public:
  struct Entry {
    double value;
    Arm best_arm;  // kX at remaining == 0
    int remaining;
    double wealth;
    double xi;
  };

  ValueTable() = default;

  std::size_t size() const { return entries_.size(); }
  const Entry* Find(const std::string& key) const;
  void Insert(const std::string& key, const Entry& entry);

  // Binds the table to the root of one query. Throws std::logic_error when
  // called again with a different root.
  void Bind(const ValueQuery& query);

  template <typename F>
  void ForEach(F&& f) const {
    for (const auto& [key, entry] : entries_) f(key, entry);
  }

 private:
  struct Root {
    double prior;
    double wealth;
    int horizon;
    std::string utility;
  };
  std::optional<Root> root_;
  std::unordered_map<std::string, Entry> entries_;
};

// W(xi0, n, x, policy) through the first-trial decomposition
//   W = sum_s P_xi(s) W(xi_1(s), n - 1, x + s, policy[s]),
// with W(., 0, x, .) = phi(x). Outcomes of probability zero are skipped.
// Throws PolicyHorizonMismatch / HorizonTooSmall for incompatible policies.
double EvaluatePolicy(const ValueQuery& query, const PolicySpec& policy);

// Arm values closer than this (relative to max(1, |value|)) count as tied;
// ties go to X. Absorbs the rounding of sums that are equal in exact
// arithmetic.
inline constexpr double kTieTolerance = 1e-13;

struct OptimalValue {
  double value;
  Arm first_arm;
};

// V(xi0, n, x) by backward induction:
//   V(xi, n, x) = max_arm sum_s P_xi(s | arm) V(xi_1(s | arm), n - 1, x + s),
// ties broken to X.
OptimalValue ComputeOptimalValue(const ValueQuery& query);

// Same, with an explicit memo. `memo == nullptr` disables memoization.
OptimalValue ComputeOptimalValue(const ValueQuery& query, ValueTable* memo);

// A depth-n tree whose every reachable node pulls the DP argmax (ties to X).
// Unreachable subtrees are filled with X.
DecisionTree OptimalPolicyTree(const ValueQuery& query);

}  // namespace fbandit

#endif  // FBANDIT_DP_ENGINE_HPP_
