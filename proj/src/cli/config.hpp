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

#ifndef FBANDIT_CLI_CONFIG_HPP_
#define FBANDIT_CLI_CONFIG_HPP_

// Experiment configuration for the command-line front end.
//
// Schema (schema_version 1), every key optional unless noted:
//
//   schema_version   1 (required in files)
//   f1, f2           {"values": [...], "probs": [...]}
//   alpha, beta      Bernoulli shortcut for f1 = Bern(alpha), f2 = Bern(beta)
//   prior | priors   number | array           default 0, 0.1, ..., 1
//   utility          utility descriptor        default {"kind": "identity"}
//   horizon | horizons | n_max                 default n = 1
//   wealth | wealths                           default x = 0
//   u_grid           Condition (I) arguments   default reachable wealths
//   tx_grid, ty      D-scan grid               default 0, 0.25, ..., 2 and 1
//   policy           "myopic" | "lfirst" | "rfirst" | "uswap" | "vswap" |
//                    {"tree": <DecisionTree>}
//   method           "dp" | "brute-force"      (value command)
//   enumeration_cap  integer                   default 1000000
//   samples, seed    simulation parameters     default 100000, 1
//   tolerance        verdict tolerance         default 1e-9
//   output           report path               default none (stdout only)
//   format           "csv" | "json" | "both"   default "csv"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbandit/json_io.hpp"
#include "fbandit/model.hpp"
#include "fbandit/strategies.hpp"

namespace fbandit::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kMaxDpHorizon = 12;

enum class ReportFormat { kCsv, kJson, kBoth };

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::optional<FiniteDistribution> f1;
  std::optional<FiniteDistribution> f2;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::vector<double> priors;
  UtilityFn utility = UtilityFn::MakeIdentity();
  std::vector<int> horizons;
  std::vector<double> wealths;
  std::vector<double> u_grid;
  std::vector<double> tx_grid;
  double ty = 1.0;
  std::string policy = "myopic";
  std::optional<DecisionTree> tree;
  std::string method = "dp";
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::optional<std::string> output;
  ReportFormat format = ReportFormat::kCsv;

  // Fills unset grids with their defaults.
  void ApplyDefaults();

  // Checks cross-field invariants; throws JsonSchemaError with the path of
  // the offending key.
  void Validate() const;

  // The instance at prior 0.5; callers re-prior it per grid cell.
  BanditInstance Instance() const;
  PolicySpec Policy() const;
  int MaxHorizon() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig ConfigFromJson(const Json& j);
Json ToJson(const ExperimentConfig& config);

ExperimentConfig LoadConfigFile(const std::string& path);

UtilityFn ParseUtilityFlag(const std::string& text);
ReportFormat ParseFormat(const std::string& text);
std::string ToString(ReportFormat format);

}  // namespace fbandit::cli

#endif  // FBANDIT_CLI_CONFIG_HPP_
