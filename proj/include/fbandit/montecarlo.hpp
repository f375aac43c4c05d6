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

#ifndef FBANDIT_MONTECARLO_HPP_
#define FBANDIT_MONTECARLO_HPP_

#include <cstdint>
#include <string>

#include "fbandit/model.hpp"
#include "fbandit/strategies.hpp"

namespace fbandit {

// std::mt19937_64 seeded with `seed`; uniforms are (bits >> 11) * 2^-53.
inline constexpr const char* kGeneratorId = "mt19937_64/v1";

struct SimConfig {
  std::uint64_t samples;
  std::uint64_t seed;
};

struct SimResult {
  double mean;
  double std_error;  // unbiased sample std / sqrt(samples); 0 for 1 sample
  std::uint64_t samples;
  std::uint64_t seed;
  std::string generator;
  std::uint64_t h1_draws;  // samples in which H1 was drawn

  bool operator==(const SimResult&) const = default;
};

// Per sample: draw H1 with probability xi0, then play `policy` for n trials,
// drawing each payoff from the pulled arm's law under the drawn hypothesis
// (inverse CDF over the alphabet), and record phi(x + payoffs). Named
// policies track the posterior along the way. Bit-reproducible for fixed
// arguments.
SimResult SimulatePolicy(const ValueQuery& query, const PolicySpec& policy,
                         const SimConfig& config);

}  // namespace fbandit

#endif  // FBANDIT_MONTECARLO_HPP_
