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

#include "fbandit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbandit/dp_engine.hpp"
#include "fbandit/parallel.hpp"
#include "fbandit/strategies.hpp"

namespace fbandit {

std::vector<double> ReachableWealths(const BanditInstance& instance, double x,
                                     int depth) {
  if (depth < 0) throw InvalidParameters("depth must be >= 0");
  std::vector<double> frontier{x};
  std::vector<double> all{x};
  for (int d = 0; d < depth; ++d) {
    std::vector<double> next;
    for (double w : frontier) {
      for (double v : instance.alphabet()) next.push_back(w + v);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end(),
                           [](double a, double b) {
                             return std::abs(a - b) <= kProbTolerance;
                           }),
               next.end());
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <= kProbTolerance;
                        }),
            all.end());
  return all;
}

Verdict CheckConditionI(const FiniteDistribution& f1,
                        const FiniteDistribution& f2, const UtilityFn& utility,
                        std::span<const double> u_grid) {
  if (u_grid.empty()) throw EmptyGrid("Condition (I) needs a nonempty u grid");
  const BanditInstance instance(f1, f2, 0.5);
  const auto alphabet = instance.alphabet();
  const bool bernoulli = instance.is_two_point_01();
  const double alpha = f1.mass(1.0);
  const double beta = f2.mass(1.0);

  double margin = std::numeric_limits<double>::infinity();
  double worst_u = u_grid.front();
  for (double u : u_grid) {
    double slack = 0.0;
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
      slack += utility(u + alphabet[s]) *
               (instance.f1_mass(s) - instance.f2_mass(s));
    }
    if (bernoulli) {
      const double closed = (utility(u + 1.0) - utility(u)) * (alpha - beta);
      slack = std::min(slack, closed);
    }
    if (slack < margin) {
      margin = slack;
      worst_u = u;
    }
  }
  Verdict verdict{margin >= -kIdentityTolerance, margin, std::nullopt};
  verdict.witness = Witness{.u = worst_u};
  return verdict;
}

double DeltaDirect(const BanditInstance& instance, const UtilityFn& utility,
                   int n, double x) {
  const ValueQuery query{instance, utility, n, x};
  return EvaluatePolicy(query, NamedPolicy::kLFirst) -
         EvaluatePolicy(query, NamedPolicy::kRFirst);
}

namespace {

double DeltaAt(const BanditInstance& instance, const UtilityFn& utility,
               const Belief& belief, int n, double x) {
  const auto alphabet = instance.alphabet();
  if (n == 1) {
    double diff = 0.0;
    for (std::size_t s = 0; s < alphabet.size(); ++s) {
      diff += utility(x + alphabet[s]) *
              (instance.f1_mass(s) - instance.f2_mass(s));
    }
    return (2.0 * belief.xi() - 1.0) * diff;
  }
  double total = 0.0;
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    const double px = MixtureOutcomeProbAt(belief, Arm::kX, s, instance);
    if (px > 0.0) {
      const Belief bx = PosteriorUpdateAt(belief, Arm::kX, s, instance);
      if (MyopicDecision(bx) == Arm::kX) {
        total += px * DeltaAt(instance, utility, bx, n - 1, x + alphabet[s]);
      }
    }
    const double py = MixtureOutcomeProbAt(belief, Arm::kY, s, instance);
    if (py > 0.0) {
      const Belief by = PosteriorUpdateAt(belief, Arm::kY, s, instance);
      if (MyopicDecision(by) == Arm::kY) {
        total += py * DeltaAt(instance, utility, by, n - 1, x + alphabet[s]);
      }
    }
  }
  return total;
}

}  // namespace

double DeltaRecursive(const BanditInstance& instance, const UtilityFn& utility,
                      int n, double x) {
  if (n < 2) throw HorizonTooSmall("the Delta recurrence needs n >= 2");
  return DeltaAt(instance, utility, instance.prior_belief(), n, x);
}

double DValue(const BanditInstance& instance, const UtilityFn& utility, int n,
              double x, double t_x, double t_y) {
  if (!(t_x >= 0.0) || !(t_y >= 0.0)) {
    throw InvalidParameters("D weights must be non-negative");
  }
  const double total = t_x + t_y;
  if (total == 0.0) return 0.0;
  return total * DeltaDirect(instance.WithPrior(t_x / total), utility, n, x);
}

Verdict DMonotonicityScan(const FiniteDistribution& f1,
                          const FiniteDistribution& f2,
                          const UtilityFn& utility, int n, double x,
                          std::span<const double> t_x_grid, double t_y) {
  if (t_x_grid.empty()) throw EmptyGrid("D scan needs a nonempty tX grid");
  if (!(t_y >= 0.0)) throw InvalidParameters("tY must be non-negative");
  for (std::size_t i = 0; i < t_x_grid.size(); ++i) {
    if (!(t_x_grid[i] >= 0.0)) {
      throw InvalidParameters("tX grid must be non-negative");
    }
    if (i > 0 && !(t_x_grid[i - 1] < t_x_grid[i])) {
      throw InvalidParameters("tX grid must be strictly increasing");
    }
  }
  const BanditInstance instance(f1, f2, 0.5);
  double margin = std::numeric_limits<double>::infinity();
  double worst_t = t_x_grid.front();
  auto observe = [&](double slack, double t) {
    if (slack < margin) {
      margin = slack;
      worst_t = t;
    }
  };

  std::vector<double> d;
  d.reserve(t_x_grid.size());
  for (double t : t_x_grid) d.push_back(DValue(instance, utility, n, x, t, t_y));
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    observe(d[i + 1] - d[i], t_x_grid[i + 1]);
  }
  for (std::size_t i = 0; i < t_x_grid.size(); ++i) {
    const double t = t_x_grid[i];
    observe(-std::abs(DValue(instance, utility, n, x, t, t)), t);
    observe(-std::abs(d[i] + DValue(instance, utility, n, x, t_y, t)), t);
  }
  if (d.size() == 1) observe(0.0, worst_t);

  Verdict verdict{margin >= -kIdentityTolerance, margin, std::nullopt};
  verdict.witness = Witness{.n = n, .x = x, .t_x = worst_t};
  return verdict;
}

GapReport MyopicGap(const ValueQuery& query) {
  GapReport report{};
  report.w_myopic = EvaluatePolicy(query, NamedPolicy::kMyopic);
  report.v_optimal = ComputeOptimalValue(query).value;
  const double margin = report.w_myopic - report.v_optimal;
  report.verdict = {margin >= -kGapTolerance, margin, std::nullopt};
  if (!report.verdict.passed) {
    report.verdict.witness = Witness{
        .xi0 = query.instance.prior(), .n = query.horizon, .x = query.wealth};
  }
  return report;
}

Verdict VerifyMyopicOptimality(const ValueQuery& query) {
  return MyopicGap(query).verdict;
}

std::optional<Witness> SearchCounterexample(const FiniteDistribution& f1,
                                            const FiniteDistribution& f2,
                                            const UtilityFn& utility,
                                            int n_max,
                                            std::span<const double> xi_grid,
                                            std::span<const double> x_grid) {
  if (xi_grid.empty() || x_grid.empty()) {
    throw EmptyGrid("counterexample search needs nonempty grids");
  }
  if (n_max < 1) throw InvalidParameters("n_max must be >= 1");
  std::vector<double> priors(xi_grid.begin(), xi_grid.end());
  std::stable_sort(priors.begin(), priors.end(), std::greater<double>());
  const BanditInstance base(f1, f2, 0.5);
  for (int n = 1; n <= n_max; ++n) {
    for (double xi0 : priors) {
      const BanditInstance instance = base.WithPrior(xi0);
      for (double x : x_grid) {
        const Verdict v = VerifyMyopicOptimality({instance, utility, n, x});
        if (!v.passed) return v.witness;
      }
    }
  }
  return std::nullopt;
}

std::vector<ConjectureCell> ConjectureCells(double alpha, double beta,
                                            std::span<const double> xi_grid,
                                            int n_max, double tolerance) {
  if (!(alpha < 1.0 && alpha > beta && beta > 0.0)) {
    throw InvalidParameters("conjecture harness needs 1 > alpha > beta > 0");
  }
  if (n_max < 1) throw InvalidParameters("n_max must be >= 1");
  if (xi_grid.empty()) throw EmptyGrid("conjecture harness needs a xi grid");
  if (!(tolerance >= 0.0)) throw InvalidParameters("tolerance must be >= 0");

  std::vector<ConjectureCell> cells;
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (double xi0 : xi_grid) cells.push_back({xi0, n, k, {}});
    }
  }
  const BanditInstance base = BanditInstance::Bernoulli(alpha, beta, 0.5);
  ParallelFor(cells.size(), [&](std::size_t i) {
    ConjectureCell& cell = cells[i];
    const ValueQuery query{base.WithPrior(cell.xi0),
                           UtilityFn::MakeIndicator(cell.k), cell.n, 0.0};
    cell.gap = MyopicGap(query);
    cell.gap.verdict.passed = cell.gap.verdict.margin >= -tolerance;
    if (cell.gap.verdict.witness) cell.gap.verdict.witness->k = cell.k;
  });
  return cells;
}

Verdict ConjectureHarness(double alpha, double beta,
                          std::span<const double> xi_grid, int n_max,
                          double tolerance) {
  const auto cells = ConjectureCells(alpha, beta, xi_grid, n_max, tolerance);
  double margin = std::numeric_limits<double>::infinity();
  const ConjectureCell* worst = &cells.front();
  for (const auto& cell : cells) {
    if (cell.gap.verdict.margin < margin) {
      margin = cell.gap.verdict.margin;
      worst = &cell;
    }
  }
  Verdict verdict{margin >= -tolerance, margin, std::nullopt};
  verdict.witness = Witness{.xi0 = worst->xi0, .n = worst->n, .k = worst->k};
  return verdict;
}

}  // namespace fbandit
