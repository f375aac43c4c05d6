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

#include "fbandit/montecarlo.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace fbandit {

namespace {

double Uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Inverse CDF over the alphabet in value order. Zero-mass outcomes are never
// returned.
std::size_t DrawOutcome(const std::vector<double>& cdf,
                        const std::vector<double>& pmf, double u) {
  for (std::size_t s = 0; s < cdf.size(); ++s) {
    if (pmf[s] > 0.0 && u < cdf[s]) return s;
  }
  // u fell into the rounding slack above the last cumulative sum.
  for (std::size_t s = cdf.size(); s-- > 0;) {
    if (pmf[s] > 0.0) return s;
  }
  return 0;
}

}  // namespace

SimResult SimulatePolicy(const ValueQuery& query, const PolicySpec& policy,
                         const SimConfig& config) {
  query.Validate();
  CheckPolicyHorizon(policy, query.instance.alphabet_size(), query.horizon);
  if (config.samples < 1) throw InvalidParameters("samples must be >= 1");

  const auto& instance = query.instance;
  const auto alphabet = instance.alphabet();
  const std::size_t m = alphabet.size();

  // pmf / cdf indexed [hypothesis][arm].
  std::vector<double> pmf[2][2];
  std::vector<double> cdf[2][2];
  for (int h = 0; h < 2; ++h) {
    for (int a = 0; a < 2; ++a) {
      double acc = 0.0;
      for (std::size_t s = 0; s < m; ++s) {
        const double p = instance.mass(static_cast<Hypothesis>(h),
                                       static_cast<Arm>(a), s);
        acc += p;
        pmf[h][a].push_back(p);
        cdf[h][a].push_back(acc);
      }
    }
  }

  const auto* named = std::get_if<NamedPolicy>(&policy);
  const auto* tree = std::get_if<DecisionTree>(&policy);
  const auto prefix =
      named ? ForcedPrefix(*named) : std::span<const Arm>{};

  std::mt19937_64 gen(config.seed);
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t h1_draws = 0;
  for (std::uint64_t i = 0; i < config.samples; ++i) {
    const bool h1 = Uniform01(gen) < instance.prior();
    if (h1) ++h1_draws;
    const int h = h1 ? 0 : 1;
    Belief belief = instance.prior_belief();
    std::size_t node = 0;
    double wealth = query.wealth;
    for (int t = 0; t < query.horizon; ++t) {
      Arm arm;
      if (tree) {
        arm = tree->arm(node);
      } else {
        arm = t < static_cast<int>(prefix.size()) ? prefix[t]
                                                  : MyopicDecision(belief);
      }
      const int a = static_cast<int>(arm);
      const std::size_t s = DrawOutcome(cdf[h][a], pmf[h][a], Uniform01(gen));
      wealth += alphabet[s];
      if (tree) {
        node = node * m + 1 + s;
      } else {
        // A drawn outcome has positive mass under the drawn hypothesis, so
        // it has positive mixture probability unless the belief has already
        // ruled that hypothesis out; keep the belief in that case.
        if (auto next = TryPosteriorUpdateAt(belief, arm, s, instance)) {
          belief = *next;
        }
      }
    }
    const double value = query.utility(wealth);
    // Welford update.
    const double delta = value - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (value - mean);
  }
  const double n = static_cast<double>(config.samples);
  const double variance = config.samples > 1 ? m2 / (n - 1.0) : 0.0;
  return {mean,
          std::sqrt(variance / n),
          config.samples,
          config.seed,
          kGeneratorId,
          h1_draws};
}

}  // namespace fbandit
