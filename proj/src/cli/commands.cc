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

#include "cli/commands.hpp"

#include <cmath>
#include <sstream>

#include "CLI11.hpp"
#include "fbandit/analysis.hpp"
#include "fbandit/dp_engine.hpp"
#include "fbandit/montecarlo.hpp"
#include "fbandit/parallel.hpp"
#include "fbandit/strategies.hpp"

namespace fbandit::cli {

namespace {

struct GridCell {
  double xi0;
  int n;
  double x;
};

// Traversal order: prior, then horizon, then wealth.
std::vector<GridCell> Grid(const ExperimentConfig& c) {
  std::vector<GridCell> cells;
  for (double xi0 : c.priors) {
    for (int n : c.horizons) {
      for (double x : c.wealths) cells.push_back({xi0, n, x});
    }
  }
  return cells;
}

Cell I(int v) { return static_cast<std::int64_t>(v); }

std::string Describe(const Witness& w) {
  std::ostringstream os;
  os.precision(17);
  const char* sep = "";
  auto field = [&](const char* name, const auto& value) {
    if (value) {
      os << sep << name << "=" << *value;
      sep = " ";
    }
  };
  field("xi0", w.xi0);
  field("n", w.n);
  field("x", w.x);
  field("k", w.k);
  field("u", w.u);
  field("t_x", w.t_x);
  return os.str();
}

std::string Num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

CommandOutcome RunValue(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  const auto cells = Grid(c);
  CommandOutcome out;
  out.report.columns = {"xi0", "n", "x", "value", "first_arm"};
  out.report.rows.resize(cells.size());
  ParallelFor(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    const ValueQuery q{base.WithPrior(cell.xi0), c.utility, cell.n, cell.x};
    double value;
    Arm arm;
    if (c.method == "brute-force") {
      const auto bf = BruteForceValue(q, c.enumeration_cap);
      value = bf.value;
      arm = bf.best_tree.arm();
    } else {
      const auto opt = ComputeOptimalValue(q);
      value = opt.value;
      arm = opt.first_arm;
    }
    out.report.rows[i].values = {cell.xi0, I(cell.n), cell.x, value,
                                 ToString(arm)};
  });
  out.summary = std::to_string(cells.size()) + " optimal values (" + c.method +
                ")";
  return out;
}

CommandOutcome RunEvaluate(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  const PolicySpec policy = c.Policy();
  const auto cells = Grid(c);
  CommandOutcome out;
  out.report.columns = {"xi0", "n", "x", "policy", "w"};
  out.report.rows.resize(cells.size());
  ParallelFor(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    const ValueQuery q{base.WithPrior(cell.xi0), c.utility, cell.n, cell.x};
    out.report.rows[i].values = {cell.xi0, I(cell.n), cell.x,
                                 PolicyName(policy), EvaluatePolicy(q, policy)};
  });
  out.summary = std::to_string(cells.size()) + " evaluations of " +
                PolicyName(policy);
  return out;
}

CommandOutcome RunVerifyMyopic(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  const auto cells = Grid(c);
  std::vector<GapReport> gaps(cells.size());
  ParallelFor(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    gaps[i] = MyopicGap({base.WithPrior(cell.xi0), c.utility, cell.n, cell.x});
  });
  CommandOutcome out;
  out.report.columns = {"xi0", "n", "x", "w_myopic", "v_optimal", "gap",
                        "passed"};
  std::size_t failed = 0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double gap = gaps[i].w_myopic - gaps[i].v_optimal;
    const bool passed = gap >= -c.tolerance;
    if (!passed) ++failed;
    if (gap < gaps[worst].w_myopic - gaps[worst].v_optimal) worst = i;
    out.report.rows.push_back({{cells[i].xi0, I(cells[i].n), cells[i].x,
                                gaps[i].w_myopic, gaps[i].v_optimal, gap,
                                passed}});
  }
  const double worst_gap = gaps[worst].w_myopic - gaps[worst].v_optimal;
  out.summary = std::to_string(cells.size()) + " cells, " +
                std::to_string(failed) + " failed; worst gap " +
                Num(worst_gap) + " at xi0=" + Num(cells[worst].xi0) +
                " n=" + std::to_string(cells[worst].n) +
                " x=" + Num(cells[worst].x);
  out.exit_code = failed ? kExitVerdictFailed : kExitOk;
  return out;
}

CommandOutcome RunCheckCondition(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  std::vector<double> grid = c.u_grid;
  if (grid.empty()) {
    for (double x : c.wealths) {
      const auto w = ReachableWealths(base, x, c.MaxHorizon());
      grid.insert(grid.end(), w.begin(), w.end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  CommandOutcome out;
  out.report.columns = {"u", "margin", "passed"};
  for (double u : grid) {
    const Verdict v =
        CheckConditionI(base.f1(), base.f2(), c.utility, std::span(&u, 1));
    out.report.rows.push_back({{u, v.margin, v.passed}});
  }
  const Verdict overall = CheckConditionI(base.f1(), base.f2(), c.utility, grid);
  out.summary = std::string("Condition (I) ") +
                (overall.passed ? "holds" : "FAILS") + " on " +
                std::to_string(grid.size()) + " grid points; margin " +
                Num(overall.margin);
  if (!overall.passed) {
    out.summary += "; witness " + Describe(*overall.witness);
  }
  out.exit_code = overall.passed ? kExitOk : kExitVerdictFailed;
  return out;
}

CommandOutcome RunDelta(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  const auto cells = Grid(c);
  CommandOutcome out;
  out.report.columns = {"xi0", "n", "x", "delta_direct", "delta_recursive",
                        "abs_diff"};
  out.report.rows.resize(cells.size());
  std::vector<double> diffs(cells.size(), 0.0);
  ParallelFor(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    const BanditInstance inst = base.WithPrior(cell.xi0);
    const double direct = DeltaDirect(inst, c.utility, cell.n, cell.x);
    auto& row = out.report.rows[i].values;
    row = {cell.xi0, I(cell.n), cell.x, direct};
    if (cell.n >= 2) {
      const double rec = DeltaRecursive(inst, c.utility, cell.n, cell.x);
      diffs[i] = std::abs(direct - rec);
      row.push_back(rec);
      row.push_back(diffs[i]);
    } else {
      row.push_back(std::monostate{});
      row.push_back(std::monostate{});
    }
  });
  double worst = 0.0;
  for (double d : diffs) worst = std::max(worst, d);
  const bool passed = worst <= kIdentityTolerance;
  out.summary = std::to_string(cells.size()) +
                " cells; max |direct - recursive| = " + Num(worst);
  out.exit_code = passed ? kExitOk : kExitVerdictFailed;
  return out;
}

CommandOutcome RunDScan(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  CommandOutcome out;
  out.report.columns = {"n", "x", "t_x", "t_y", "d"};
  bool all_passed = true;
  double worst = std::numeric_limits<double>::infinity();
  std::ostringstream summary;
  summary.precision(17);
  for (int n : c.horizons) {
    for (double x : c.wealths) {
      for (double t : c.tx_grid) {
        out.report.rows.push_back(
            {{I(n), x, t, c.ty, DValue(base, c.utility, n, x, t, c.ty)}});
      }
      const Verdict v = DMonotonicityScan(base.f1(), base.f2(), c.utility, n,
                                          x, c.tx_grid, c.ty);
      all_passed = all_passed && v.passed;
      if (v.margin < worst) worst = v.margin;
      if (!v.passed) summary << "FAILED at " << Describe(*v.witness) << "; ";
    }
  }
  summary << "D-scan " << (all_passed ? "passed" : "failed")
          << "; worst margin " << worst;
  out.summary = summary.str();
  out.exit_code = all_passed ? kExitOk : kExitVerdictFailed;
  return out;
}

CommandOutcome RunSearch(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  const auto witness = SearchCounterexample(base.f1(), base.f2(), c.utility,
                                            c.MaxHorizon(), c.priors, c.wealths);
  CommandOutcome out;
  out.report.columns = {"xi0", "n", "x", "w_myopic", "v_optimal", "gap"};
  out.allow_empty = true;
  if (!witness) {
    out.summary = "no counterexample up to n=" + std::to_string(c.MaxHorizon());
    return out;
  }
  const GapReport gap = MyopicGap(
      {base.WithPrior(*witness->xi0), c.utility, *witness->n, *witness->x});
  out.report.rows.push_back({{*witness->xi0, I(*witness->n), *witness->x,
                              gap.w_myopic, gap.v_optimal,
                              gap.w_myopic - gap.v_optimal}});
  out.summary = "counterexample found: " + Describe(*witness) + " gap " +
                Num(gap.w_myopic - gap.v_optimal);
  out.exit_code = kExitVerdictFailed;
  return out;
}

CommandOutcome RunConjecture(const ExperimentConfig& c) {
  if (!c.alpha) {
    throw JsonSchemaError("/alpha", "conjecture needs alpha and beta");
  }
  const auto cells =
      ConjectureCells(*c.alpha, *c.beta, c.priors, c.MaxHorizon(), c.tolerance);
  const Verdict verdict =
      ConjectureHarness(*c.alpha, *c.beta, c.priors, c.MaxHorizon(), c.tolerance);
  CommandOutcome out;
  out.report.columns = {"xi0", "n", "k", "w_myopic", "v_optimal", "gap",
                        "passed"};
  for (const auto& cell : cells) {
    const double gap = cell.gap.w_myopic - cell.gap.v_optimal;
    out.report.rows.push_back({{cell.xi0, I(cell.n), I(cell.k),
                                cell.gap.w_myopic, cell.gap.v_optimal, gap,
                                gap >= -c.tolerance}});
  }
  out.summary = std::string("myopic maximizes P(S_n >= k): ") +
                (verdict.passed ? "confirmed" : "REFUTED") + " on " +
                std::to_string(cells.size()) + " cells; worst gap " +
                Num(verdict.margin) + " at " + Describe(*verdict.witness);
  out.exit_code = verdict.passed ? kExitOk : kExitVerdictFailed;
  return out;
}

CommandOutcome RunSimulate(const ExperimentConfig& c) {
  const BanditInstance base = c.Instance();
  const PolicySpec policy = c.Policy();
  const auto cells = Grid(c);
  CommandOutcome out;
  out.report.columns = {"xi0",     "n",         "x",       "policy",
                        "exact",   "mean",      "std_error", "samples",
                        "seed",    "generator", "h1_draws",  "within_4se"};
  out.report.rows.resize(cells.size());
  ParallelFor(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    const ValueQuery q{base.WithPrior(cell.xi0), c.utility, cell.n, cell.x};
    const double exact = EvaluatePolicy(q, policy);
    const SimResult r = SimulatePolicy(q, policy, {c.samples, c.seed});
    const bool within = std::abs(r.mean - exact) <= 4.0 * r.std_error ||
                        std::abs(r.mean - exact) <= kIdentityTolerance;
    out.report.rows[i].values = {cell.xi0,    I(cell.n),  cell.x,
                                 PolicyName(policy), exact, r.mean,
                                 r.std_error, r.samples,  r.seed,
                                 r.generator, r.h1_draws, within};
  });
  out.summary = std::to_string(cells.size()) + " simulations of " +
                PolicyName(policy) + " with " + std::to_string(c.samples) +
                " samples, generator " + kGeneratorId;
  return out;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> kNames = {
      "value",        "evaluate", "verify-myopic",        "check-condition",
      "delta",        "d-scan",   "search-counterexample", "conjecture",
      "simulate"};
  return kNames;
}

CommandOutcome Dispatch(const std::string& command,
                        const ExperimentConfig& config) {
  if (command == "value") return RunValue(config);
  if (command == "evaluate") return RunEvaluate(config);
  if (command == "verify-myopic") return RunVerifyMyopic(config);
  if (command == "check-condition") return RunCheckCondition(config);
  if (command == "delta") return RunDelta(config);
  if (command == "d-scan") return RunDScan(config);
  if (command == "search-counterexample") return RunSearch(config);
  if (command == "conjecture") return RunConjecture(config);
  if (command == "simulate") return RunSimulate(config);
  throw InvalidParameters("unknown command \"" + command + "\"");
}

namespace {

struct Flags {
  std::string config;
  std::optional<double> alpha, beta, prior, wealth, tolerance;
  std::optional<int> nmax, horizon;
  std::optional<std::uint64_t> samples, seed, cap;
  std::optional<std::string> utility, policy, method, output, format;
};

void AddFlags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "Experiment config (JSON)");
  app.add_option("--alpha", f.alpha, "Bernoulli mean of F1");
  app.add_option("--beta", f.beta, "Bernoulli mean of F2");
  app.add_option("--prior", f.prior, "Single prior xi0");
  app.add_option("--nmax", f.nmax, "Horizons 1..N");
  app.add_option("--horizon", f.horizon, "Single horizon n");
  app.add_option("--wealth", f.wealth, "Single initial wealth x");
  app.add_option("--utility", f.utility, "identity | negated | indicator:K");
  app.add_option("--policy", f.policy,
                 "myopic | lfirst | rfirst | uswap | vswap");
  app.add_option("--method", f.method, "dp | brute-force");
  app.add_option("--samples", f.samples, "Monte Carlo samples");
  app.add_option("--seed", f.seed, "Monte Carlo seed");
  app.add_option("--cap", f.cap, "Strategy enumeration cap");
  app.add_option("--tolerance", f.tolerance, "Verdict tolerance");
  app.add_option("--output", f.output, "Report path");
  app.add_option("--format", f.format, "csv | json | both");
}

ExperimentConfig BuildConfig(const Flags& f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{}
                                        : LoadConfigFile(f.config);
  if (f.alpha || f.beta) {
    if (f.alpha) c.alpha = f.alpha;
    if (f.beta) c.beta = f.beta;
    c.f1.reset();
    c.f2.reset();
  }
  if (f.prior) c.priors = {*f.prior};
  if (f.nmax && f.horizon) {
    throw JsonSchemaError("--horizon", "give at most one of --nmax, --horizon");
  }
  if (f.nmax) {
    if (*f.nmax < 1) throw JsonSchemaError("--nmax", "must be >= 1");
    c.horizons.clear();
    for (int n = 1; n <= *f.nmax; ++n) c.horizons.push_back(n);
  }
  if (f.horizon) c.horizons = {*f.horizon};
  if (f.wealth) c.wealths = {*f.wealth};
  try {
    if (f.utility) c.utility = ParseUtilityFlag(*f.utility);
    if (f.format) c.format = ParseFormat(*f.format);
  } catch (const InvalidParameters& e) {
    throw JsonSchemaError(f.utility ? "--utility" : "--format", e.what());
  }
  if (f.policy) {
    c.policy = *f.policy;
    c.tree.reset();
  }
  if (f.method) c.method = *f.method;
  if (f.samples) c.samples = *f.samples;
  if (f.seed) c.seed = *f.seed;
  if (f.cap) c.enumeration_cap = *f.cap;
  if (f.tolerance) c.tolerance = *f.tolerance;
  if (f.output) c.output = *f.output;
  c.ApplyDefaults();
  c.Validate();
  return c;
}

}  // namespace

int RunCommand(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact engine for two-armed bandits with swapped hypotheses"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<CLI::App*> subs;
  for (const auto& name : CommandNames()) {
    CLI::App* sub = app.add_subcommand(name);
    AddFlags(*sub, flags);
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitUsage;
  }
  std::string command;
  for (CLI::App* sub : subs) {
    if (sub->parsed()) command = sub->get_name();
  }

  try {
    const ExperimentConfig config = BuildConfig(flags);
    CommandOutcome outcome = Dispatch(command, config);
    PrintTable(outcome.report, out);
    out << outcome.summary << '\n';
    if (config.output) {
      for (const auto& path : EmitReport(outcome.report, config.format,
                                         *config.output, outcome.allow_empty)) {
        out << "wrote " << path << '\n';
      }
    }
    return outcome.exit_code;
  } catch (const JsonSchemaError& e) {
    err << "config error at " << e.what() << '\n';
    return kExitUsage;
  } catch (const BanditError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fbandit::cli
