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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Tolerances and runtime budgets are fixed
// below.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "fbandit/analysis.hpp"
#include "fbandit/dp_engine.hpp"
#include "fbandit/json_io.hpp"
#include "fbandit/montecarlo.hpp"
#include "fbandit/strategies.hpp"

namespace fbandit {
namespace {

constexpr double kGapTol = 1e-9;
constexpr double kIdTol = 1e-12;

struct Outcome {
  bool passed;
  std::string detail;
};

std::vector<double> Steps(double lo, double hi, double step) {
  std::vector<double> g;
  const int count = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= count; ++i) g.push_back(lo + i * step);
  return g;
}

const std::vector<double> kXi = Steps(0.0, 1.0, 0.1);
const std::vector<double> kAlphaBeta = Steps(0.1, 0.9, 0.1);
const std::vector<double> kWealths = {0.0, 1.5, -2.0};
const UtilityFn kId = UtilityFn::MakeIdentity();
const UtilityFn kNeg = UtilityFn::MakeNegated(UtilityFn::MakeIdentity());

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// 1. Myopic optimality for identity utility on the full Bernoulli grid. For
// alpha < beta the better arm is Y under H1; the myopic rule is applied to
// the relabeled instance (F2, F1, 1 - xi0), whose optimal value must match
// the original.
Outcome Criterion1() {
  double worst = INFINITY;
  double relabel_drift = 0.0;
  std::size_t cells = 0;
  for (double a : kAlphaBeta) {
    for (double b : kAlphaBeta) {
      if (std::abs(a - b) < 1e-9) continue;
      for (double xi : kXi) {
        for (double x : kWealths) {
          for (int n = 1; n <= 6; ++n) {
            const BanditInstance inst = BanditInstance::Bernoulli(a, b, xi);
            const ValueQuery q{inst, kId, n, x};
            const double v = ComputeOptimalValue(q).value;
            double w;
            if (a > b) {
              w = EvaluatePolicy(q, NamedPolicy::kMyopic);
            } else {
              const ValueQuery r{inst.Relabeled(), kId, n, x};
              w = EvaluatePolicy(r, NamedPolicy::kMyopic);
              relabel_drift =
                  std::max(relabel_drift, std::abs(ComputeOptimalValue(r).value - v));
            }
            worst = std::min(worst, w - v);
            ++cells;
          }
        }
      }
    }
  }
  return {worst >= -kGapTol && relabel_drift <= kIdTol && cells == 14256,
          Fmt("%zu cells, worst gap %.3g, relabel drift %.3g", cells, worst,
              relabel_drift)};
}

// 2. Myopic maximizes P(S_n >= k) for n <= 8.
Outcome Criterion2() {
  const std::pair<double, double> pairs[] = {
      {0.7, 0.3}, {0.9, 0.1}, {0.6, 0.4}, {0.55, 0.45}};
  bool ok = true;
  double worst = INFINITY;
  std::size_t cells = 0;
  for (const auto& [a, b] : pairs) {
    const Verdict v = ConjectureHarness(a, b, kXi, 8, kGapTol);
    cells += ConjectureCells(a, b, kXi, 8, kGapTol).size();
    ok = ok && v.passed;
    worst = std::min(worst, v.margin);
  }
  return {ok && cells == 4 * 11 * 36,
          Fmt("%zu cells, worst gap %.3g", cells, worst)};
}

// 3. Exhaustive strategy enumeration agrees with the DP.
Outcome Criterion3() {
  const double grid[] = {0.2, 0.5, 0.8};
  double worst = 0.0;
  std::size_t cells = 0;
  for (double a : grid) {
    for (double b : grid) {
      if (a == b) continue;
      for (double xi : kXi) {
        for (double x : kWealths) {
          for (int n = 1; n <= 4; ++n) {
            std::vector<UtilityFn> us = {kId, kNeg};
            for (int k = 1; k <= n; ++k) us.push_back(UtilityFn::MakeIndicator(k));
            for (const UtilityFn& u : us) {
              const ValueQuery q{BanditInstance::Bernoulli(a, b, xi), u, n, x};
              worst = std::max(worst, std::abs(BruteForceValue(q).value -
                                               ComputeOptimalValue(q).value));
              ++cells;
            }
          }
        }
      }
    }
  }
  return {worst <= kIdTol, Fmt("%zu cells, max |brute - dp| %.3g", cells, worst)};
}

// 4. Negated identity breaks myopic optimality already at n = 1.
Outcome Criterion4() {
  const BanditInstance inst = BanditInstance::Bernoulli(0.7, 0.3, 0.5);
  const std::vector<double> x = {0.0};
  const auto witness = SearchCounterexample(inst.f1(), inst.f2(), kNeg, 4, kXi, x);
  const GapReport g = MyopicGap({inst.WithPrior(0.9), kNeg, 1, 0.0});
  const double gap = g.w_myopic - g.v_optimal;
  const double closed_form = -(2 * 0.9 - 1) * (0.7 - 0.3);
  const bool ok = witness && witness->n == 1 && std::abs(gap - closed_form) <= kIdTol &&
                  std::abs(gap + 0.32) <= kIdTol;
  return {ok, Fmt("witness n=%d xi0=%.17g, gap %.17g", witness ? *witness->n : -1,
                  witness ? *witness->xi0 : NAN, gap)};
}

// 5. Symmetry, swap, recurrence and monotonicity identities.
Outcome Criterion5() {
  double sym = 0, swap = 0, rec = 0, fixed = 0, anti = 0;
  double mono = INFINITY;
  std::size_t mono_rows = 0;
  for (double a : kAlphaBeta) {
    for (double b : kAlphaBeta) {
      if (std::abs(a - b) < 1e-9) continue;
      const BanditInstance base = BanditInstance::Bernoulli(a, b, 0.5);
      for (double x : kWealths) {
        for (int n = 1; n <= 5; ++n) {
          std::vector<double> delta;
          for (double xi : kXi) {
            const BanditInstance inst = base.WithPrior(xi);
            const BanditInstance mirror = base.WithPrior(1 - xi);
            const ValueQuery q{inst, kId, n, x};
            const ValueQuery m{mirror, kId, n, x};
            sym = std::max(sym, std::abs(EvaluatePolicy(q, NamedPolicy::kMyopic) -
                                         EvaluatePolicy(m, NamedPolicy::kMyopic)));
            sym = std::max(sym, std::abs(EvaluatePolicy(q, NamedPolicy::kLFirst) -
                                         EvaluatePolicy(m, NamedPolicy::kRFirst)));
            const double d = DeltaDirect(inst, kId, n, x);
            if (n >= 2) {
              swap = std::max(swap, std::abs(EvaluatePolicy(q, NamedPolicy::kUSwap) -
                                             EvaluatePolicy(q, NamedPolicy::kVSwap)));
              rec = std::max(rec, std::abs(DeltaRecursive(inst, kId, n, x) - d));
            }
            anti = std::max(anti, std::abs(d + DeltaDirect(mirror, kId, n, x)));
            delta.push_back(d);
          }
          fixed = std::max(fixed, std::abs(DeltaDirect(base, kId, n, x)));
          const auto reach = ReachableWealths(base, x, n);
          if (CheckConditionI(base.f1(), base.f2(), kId, reach).passed) {
            ++mono_rows;
            for (std::size_t i = 0; i + 1 < delta.size(); ++i) {
              mono = std::min(mono, delta[i + 1] - delta[i]);
            }
          }
        }
      }
    }
  }
  const bool ok = sym <= kIdTol && swap <= kIdTol && rec <= kIdTol && fixed <= kIdTol &&
                  anti <= kIdTol && mono >= -kIdTol && mono_rows > 0;
  return {ok, Fmt("symmetry %.2g, swap %.2g, recurrence %.2g, Delta(0.5) %.2g, "
                  "antisymmetry %.2g, monotone slack %.2g over %zu rows",
                  sym, swap, rec, fixed, anti, mono, mono_rows)};
}

// 6. D_n is nondecreasing in t_X for two instances satisfying Condition (I).
Outcome Criterion6() {
  struct Case {
    BanditInstance inst;
    UtilityFn utility;
  };
  const Case cases[] = {
      {BanditInstance::Bernoulli(0.7, 0.3, 0.5), kId},
      {BanditInstance(FiniteDistribution({{0, 0.2}, {1, 0.3}, {2, 0.5}}),
                      FiniteDistribution({{0, 0.5}, {1, 0.3}, {2, 0.2}}), 0.5),
       UtilityFn::MakeIndicator(2)},
  };
  const std::vector<double> tx = Steps(0.0, 2.0, 0.25);
  bool ok = true;
  double worst = INFINITY;
  for (const Case& c : cases) {
    const auto reach = ReachableWealths(c.inst, 0.0, 4);
    ok = ok && CheckConditionI(c.inst.f1(), c.inst.f2(), c.utility, reach).passed;
    for (int n = 1; n <= 4; ++n) {
      const Verdict v =
          DMonotonicityScan(c.inst.f1(), c.inst.f2(), c.utility, n, 0.0, tx, 1.0);
      ok = ok && v.passed;
      worst = std::min(worst, v.margin);
    }
  }
  return {ok, Fmt("2 instances, n <= 4, worst slack %.3g", worst)};
}

// 7. Monte Carlo estimates bracket the exact values.
Outcome Criterion7() {
  struct Pair {
    ValueQuery query;
    PolicySpec policy;
  };
  const auto bern = [](double a, double b, double xi) {
    return BanditInstance::Bernoulli(a, b, xi);
  };
  const BanditInstance three(FiniteDistribution({{0, 0.2}, {1, 0.3}, {2, 0.5}}),
                             FiniteDistribution({{0, 0.5}, {1, 0.3}, {2, 0.2}}), 0.4);
  const std::vector<Pair> pairs = {
      {{bern(0.7, 0.3, 1.0), kId, 1, 0}, DecisionTree::Uniform(2, 1, Arm::kX)},
      {{bern(0.7, 0.3, 0.6), kId, 3, 0}, NamedPolicy::kMyopic},
      {{bern(0.7, 0.3, 0.6), kNeg, 4, 1.5}, NamedPolicy::kMyopic},
      {{bern(0.9, 0.1, 0.3), UtilityFn::MakeIndicator(2), 4, 0}, NamedPolicy::kMyopic},
      {{bern(0.6, 0.4, 0.5), kId, 5, -2}, NamedPolicy::kLFirst},
      {{bern(0.6, 0.4, 0.2), kId, 5, 0}, NamedPolicy::kRFirst},
      {{bern(0.55, 0.45, 0.7), UtilityFn::MakeIndicator(3), 6, 0}, NamedPolicy::kUSwap},
      {{bern(0.2, 0.8, 0.9), kId, 4, 0}, NamedPolicy::kVSwap},
      {{three, UtilityFn::MakeIndicator(3), 3, 0}, NamedPolicy::kMyopic},
      {{three, UtilityFn::MakePiecewise({{0, 0}, {2, 1}, {6, 1.5}}), 3, 0.5},
       OptimalPolicyTree({three, UtilityFn::MakePiecewise({{0, 0}, {2, 1}, {6, 1.5}}),
                          3, 0.5})},
  };
  int covered = 0;
  bool replay = true;
  double worst_z = 0.0;
  std::uint64_t seed = 20261014;
  for (const Pair& p : pairs) {
    const double exact = EvaluatePolicy(p.query, p.policy);
    const SimConfig cfg{100000, seed++};
    const SimResult r = SimulatePolicy(p.query, p.policy, cfg);
    const double err = std::abs(r.mean - exact);
    if (err <= 4 * r.std_error) ++covered;
    if (r.std_error > 0) worst_z = std::max(worst_z, err / r.std_error);
    replay = replay && ToJson(r).dump() == ToJson(SimulatePolicy(p.query, p.policy, cfg)).dump();
  }
  return {covered == 10 && replay,
          Fmt("%d/10 within 4 std errors (max z %.2f), replay %s", covered, worst_z,
              replay ? "identical" : "DIFFERS")};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing " + path + ">";
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int Cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"fbandit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::RunCommand(static_cast<int>(argv.size()), argv.data(), out, err);
}

// 8. Identical configs give byte-identical report files.
Outcome Criterion8() {
  bool ok = true;
  std::string detail;
  for (const std::string cmd : {"verify-myopic", "simulate"}) {
    const std::string cfg = "acceptance_" + cmd + ".json";
    for (int run = 1; run <= 2; ++run) {
      std::ofstream(cfg) << R"({"schema_version": 1, "alpha": 0.7, "beta": 0.3,
          "n_max": 4, "wealths": [0, 1.5], "samples": 20000, "seed": 3,
          "format": "both", "output": "acceptance_)"
                         << cmd << "_" << run << ".csv\"}";
      ok = ok && Cli({cmd, "--config", cfg}) == cli::kExitOk;
    }
    for (const char* ext : {".csv", ".json"}) {
      const std::string a = Slurp("acceptance_" + cmd + "_1" + ext);
      const std::string b = Slurp("acceptance_" + cmd + "_2" + ext);
      ok = ok && a == b && a.size() > 100;
      detail += Fmt("%s%s %zu bytes %s; ", cmd.c_str(), ext, a.size(),
                    a == b ? "identical" : "DIFFER");
    }
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace fbandit

int main() {
  using namespace fbandit;
  const Criterion criteria[] = {
      {1, "myopic optimal for identity utility, Bernoulli grid, n <= 6", 60, Criterion1},
      {2, "myopic maximizes P(S_n >= k), n <= 8", 120, Criterion2},
      {3, "brute force equals DP, n <= 4", 60, Criterion3},
      {4, "negated identity counterexample at n = 1", 60, Criterion4},
      {5, "symmetry, swap, recurrence and monotonicity identities, n <= 5", 60,
       Criterion5},
      {6, "D_n monotone in t_X for Condition (I) instances, n <= 4", 60, Criterion6},
      {7, "Monte Carlo within 4 std errors, seeded replay", 30, Criterion7},
      {8, "deterministic verify-myopic and simulate reports", 60, Criterion8},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool passed = o.passed && secs < c.budget_s;
    if (!passed) ++failures;
    std::printf("%s criterion %d: %s [%s; %.2fs of %.0fs]\n", passed ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
