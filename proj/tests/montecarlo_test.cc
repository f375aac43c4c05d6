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

#include <cmath>

#include "doctest.h"
#include "fbandit/dp_engine.hpp"
#include "fbandit/errors.hpp"
#include "fbandit/json_io.hpp"
#include "fbandit/montecarlo.hpp"

namespace fbandit {
namespace {

ValueQuery Query(double prior, int n, UtilityFn u = UtilityFn::MakeIdentity()) {
  return {BanditInstance::Bernoulli(0.7, 0.3, prior), std::move(u), n, 0.0};
}

TEST_SUITE("montecarlo") {

TEST_CASE("constant utility has no spread") {
  const SimResult r = SimulatePolicy(Query(0.4, 3, UtilityFn::MakeConstant(2.0)),
                                     NamedPolicy::kMyopic, {500, 9});
  CHECK(r.mean == 2.0);
  CHECK(r.std_error == 0.0);
  CHECK(r.samples == 500);
  CHECK(r.generator == kGeneratorId);
}

TEST_CASE("pure hypothesis single pull") {
  const SimResult r = SimulatePolicy(Query(1.0, 1), DecisionTree::Uniform(2, 1, Arm::kX),
                                     {100000, 3});
  CHECK(r.h1_draws == 100000);
  CHECK(std::abs(r.mean - 0.7) <= 4 * r.std_error);
  // Bernoulli(0.7) sample spread.
  CHECK(r.std_error == doctest::Approx(std::sqrt(0.21 / 1e5)).epsilon(0.02));
}

TEST_CASE("myopic matches the exact value") {
  const auto q = Query(0.6, 3);
  const double exact = EvaluatePolicy(q, NamedPolicy::kMyopic);
  const SimResult r = SimulatePolicy(q, NamedPolicy::kMyopic, {100000, 11});
  CHECK(std::abs(r.mean - exact) <= 4 * r.std_error);
  const double xi = 0.6;
  CHECK(std::abs(r.h1_draws / 1e5 - xi) <= 4 * std::sqrt(xi * (1 - xi) / 1e5));
}

TEST_CASE("fixed seed replays exactly") {
  const auto q = Query(0.45, 4, UtilityFn::MakeIndicator(2));
  const SimResult a = SimulatePolicy(q, NamedPolicy::kUSwap, {20000, 77});
  const SimResult b = SimulatePolicy(q, NamedPolicy::kUSwap, {20000, 77});
  const SimResult c = SimulatePolicy(q, NamedPolicy::kUSwap, {20000, 78});
  CHECK(a == b);
  CHECK(ToJson(a).dump() == ToJson(b).dump());
  CHECK(!(a == c));
}

TEST_CASE("coverage over independent seeds") {
  // Binomial check: a 4 sigma band should almost never miss in 100 seeds.
  const auto q = Query(0.35, 3, UtilityFn::MakeIndicator(2));
  const double exact = EvaluatePolicy(q, NamedPolicy::kMyopic);
  int covered = 0;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    const SimResult r = SimulatePolicy(q, NamedPolicy::kMyopic, {4000, seed});
    if (std::abs(r.mean - exact) <= 4 * r.std_error) ++covered;
  }
  CHECK(covered >= 99);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(SimulatePolicy(Query(0.5, 2), DecisionTree::Uniform(2, 3, Arm::kX),
                                 {10, 1}),
                  PolicyHorizonMismatch);
  CHECK_THROWS_AS(SimulatePolicy(Query(0.5, 2), NamedPolicy::kMyopic, {0, 1}),
                  InvalidParameters);
}

}  // TEST_SUITE

}  // namespace
}  // namespace fbandit
