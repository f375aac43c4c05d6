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

#ifndef FBANDIT_ANALYSIS_HPP_
#define FBANDIT_ANALYSIS_HPP_

// Verification of myopic optimality and of the identities behind it.
//
// Delta_n(x, xi0) = W(xi0, n, x, L^n) - W(xi0, n, x, R^n), where L^n / R^n pull
// X / Y first and then play myopically, and
// D_n(x, tX, tY) = (tX + tY) Delta_n(x, tX / (tX + tY)) (0 if tX + tY = 0).

#include <optional>
#include <span>
#include <vector>

#include "fbandit/model.hpp"

namespace fbandit {

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kGapTolerance = 1e-9;

// Coordinates of the extremal or violating case of a check.
struct Witness {
  std::optional<double> xi0 = std::nullopt;
  std::optional<int> n = std::nullopt;
  std::optional<double> x = std::nullopt;
  std::optional<int> k = std::nullopt;
  std::optional<double> u = std::nullopt;
  std::optional<double> t_x = std::nullopt;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  bool passed;
  double margin;  // smallest slack observed
  std::optional<Witness> witness;
};

// x + sums of 0..depth payoffs drawn from the alphabet, sorted and deduplicated.
std::vector<double> ReachableWealths(const BanditInstance& instance, double x,
                                     int depth);

// Condition (I) on a finite grid: for every u,
//   sum_s phi(u + s) (f1(s) - f2(s)) >= -1e-12.
// margin is the minimum of that sum over the grid, witness its argmin. For
// Bernoulli laws on {0, 1} the closed form (phi(u+1) - phi(u))(alpha - beta) is
// also evaluated and the smaller of the two forms is reported.
// Throws EmptyGrid.
Verdict CheckConditionI(const FiniteDistribution& f1,
                        const FiniteDistribution& f2, const UtilityFn& utility,
                        std::span<const double> u_grid);

// Delta_n(x, xi0) from the L^n and R^n evaluations. The prior is taken from
// `instance`.
double DeltaDirect(const BanditInstance& instance, const UtilityFn& utility,
                   int n, double x);

// Delta_n(x, xi0) from the recurrence
//   Delta_n(x, xi0) = sum_s [xi_X(s) >= 1/2] Delta_{n-1}(x + s, xi_X(s)) P_X(s)
//                   + sum_s [xi_Y(s) <  1/2] Delta_{n-1}(x + s, xi_Y(s)) P_Y(s),
// bottoming out in Delta_1(x, xi0) = (2 xi0 - 1) sum_s phi(x + s)(f1 - f2).
// Throws HorizonTooSmall for n < 2.
double DeltaRecursive(const BanditInstance& instance, const UtilityFn& utility,
                      int n, double x);

double DValue(const BanditInstance& instance, const UtilityFn& utility, int n,
              double x, double t_x, double t_y);

// Scans D_n(x, ., tY) along an increasing grid of tX. Passes when D is
// nondecreasing (slack >= -1e-12), D(x, t, t) = 0 for every grid t and tY, and
// D(x, a, b) = -D(x, b, a) for every grid a against tY.
// Throws EmptyGrid, InvalidParameters for negative or unsorted grids.
Verdict DMonotonicityScan(const FiniteDistribution& f1,
                          const FiniteDistribution& f2,
                          const UtilityFn& utility, int n, double x,
                          std::span<const double> t_x_grid, double t_y);

// margin = W(myopic) - V; passes when margin >= -1e-9.
Verdict VerifyMyopicOptimality(const ValueQuery& query);

struct GapReport {
  double w_myopic;
  double v_optimal;
  Verdict verdict;
};
GapReport MyopicGap(const ValueQuery& query);

// First (n, xi0, x) with a failed VerifyMyopicOptimality, scanning n
// ascending, xi0 descending and x in grid order. Throws EmptyGrid.
std::optional<Witness> SearchCounterexample(const FiniteDistribution& f1,
                                            const FiniteDistribution& f2,
                                            const UtilityFn& utility,
                                            int n_max,
                                            std::span<const double> xi_grid,
                                            std::span<const double> x_grid);

// Myopic optimality for phi = 1[wealth >= k], x = 0, all n <= n_max,
// k in 1..n, xi0 in the grid, on Bernoulli(alpha) / Bernoulli(beta). margin is
// the worst gap and the witness its (xi0, n, k). Throws InvalidParameters
// unless 1 > alpha > beta > 0.
Verdict ConjectureHarness(double alpha, double beta,
                          std::span<const double> xi_grid, int n_max,
                          double tolerance = kGapTolerance);

// Splits the grid cells of ConjectureHarness into rows for reporting.
struct ConjectureCell {
  double xi0;
  int n;
  int k;
  GapReport gap;
};
std::vector<ConjectureCell> ConjectureCells(double alpha, double beta,
                                            std::span<const double> xi_grid,
                                            int n_max, double tolerance);

}  // namespace fbandit

#endif  // FBANDIT_ANALYSIS_HPP_
