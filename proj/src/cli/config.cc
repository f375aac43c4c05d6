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

#include "cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fbandit::cli {

namespace {

std::vector<double> UniformGrid(double lo, double hi, int steps) {
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i) {
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) / steps);
  }
  return grid;
}

std::vector<double> NumberArray(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonSchemaError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(RequireNumber(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

std::uint64_t RequireUint(const Json& j, const std::string& path) {
  if (!j.is_number_integer() ||
      (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
    throw JsonSchemaError(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string RequireString(const Json& j, const std::string& path) {
  if (!j.is_string()) throw JsonSchemaError(path, "expected a string");
  return j.get<std::string>();
}

void Exclusive(const Json& j, std::initializer_list<const char*> keys) {
  int present = 0;
  std::string names;
  for (const char* k : keys) {
    if (j.contains(k)) ++present;
    names += names.empty() ? k : std::string(", ") + k;
  }
  if (present > 1) {
    throw JsonSchemaError("", "at most one of " + names + " may be given");
  }
}

}  // namespace

void ExperimentConfig::ApplyDefaults() {
  if (priors.empty()) priors = UniformGrid(0.0, 1.0, 10);
  if (horizons.empty()) horizons = {1};
  if (wealths.empty()) wealths = {0.0};
  if (tx_grid.empty()) tx_grid = UniformGrid(0.0, 2.0, 8);
}

void ExperimentConfig::Validate() const {
  if (schema_version != kSchemaVersion) {
    throw JsonSchemaError("/schema_version",
                          "unsupported schema version " +
                              std::to_string(schema_version));
  }
  if (f1.has_value() != f2.has_value()) {
    throw JsonSchemaError(f1 ? "/f2" : "/f1", "f1 and f2 must be given together");
  }
  if (alpha.has_value() != beta.has_value()) {
    throw JsonSchemaError(alpha ? "/beta" : "/alpha",
                          "alpha and beta must be given together");
  }
  if (f1 && alpha) {
    throw JsonSchemaError("/alpha", "give either f1/f2 or alpha/beta, not both");
  }
  if (!f1 && !alpha) {
    throw JsonSchemaError("/f1", "an instance (f1/f2 or alpha/beta) is required");
  }
  if (alpha) {
    if (!(*alpha >= 0.0 && *alpha <= 1.0)) {
      throw JsonSchemaError("/alpha", "must lie in [0, 1]");
    }
    if (!(*beta >= 0.0 && *beta <= 1.0)) {
      throw JsonSchemaError("/beta", "must lie in [0, 1]");
    }
  }
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (!(priors[i] >= 0.0 && priors[i] <= 1.0)) {
      throw JsonSchemaError("/priors/" + std::to_string(i), "must lie in [0, 1]");
    }
  }
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1 || horizons[i] > kMaxDpHorizon) {
      throw JsonSchemaError("/horizons/" + std::to_string(i),
                            "horizon must lie in 1.." +
                                std::to_string(kMaxDpHorizon));
    }
  }
  for (std::size_t i = 0; i < tx_grid.size(); ++i) {
    if (!(tx_grid[i] >= 0.0) || (i > 0 && !(tx_grid[i - 1] < tx_grid[i]))) {
      throw JsonSchemaError("/tx_grid/" + std::to_string(i),
                            "must be non-negative and strictly increasing");
    }
  }
  if (!(ty >= 0.0)) throw JsonSchemaError("/ty", "must be non-negative");
  if (tree) {
    const std::size_t alphabet = Instance().alphabet_size();
    if (tree->depth() > 1 && tree->branching() != alphabet) {
      throw JsonSchemaError("/policy/tree",
                            "tree branching " +
                                std::to_string(tree->branching()) +
                                " != alphabet size " + std::to_string(alphabet));
    }
  } else {
    try {
      ParseNamedPolicy(policy);
    } catch (const InvalidParameters& e) {
      throw JsonSchemaError("/policy", e.what());
    }
  }
  if (method != "dp" && method != "brute-force") {
    throw JsonSchemaError("/method", "expected \"dp\" or \"brute-force\"");
  }
  if (samples < 1) throw JsonSchemaError("/samples", "must be >= 1");
  if (!(tolerance >= 0.0)) throw JsonSchemaError("/tolerance", "must be >= 0");
}

BanditInstance ExperimentConfig::Instance() const {
  try {
    if (f1) return BanditInstance(*f1, *f2, 0.5);
    if (alpha) return BanditInstance::Bernoulli(*alpha, *beta, 0.5);
  } catch (const BanditError& e) {
    throw JsonSchemaError(f1 ? "/f1" : "/alpha", e.what());
  }
  throw JsonSchemaError("/f1", "an instance (f1/f2 or alpha/beta) is required");
}

PolicySpec ExperimentConfig::Policy() const {
  if (tree) {
    if (tree->depth() == 1) {
      return DecisionTree(Instance().alphabet_size(), 1, {tree->arm()});
    }
    return *tree;
  }
  return ParseNamedPolicy(policy);
}

int ExperimentConfig::MaxHorizon() const {
  return horizons.empty() ? 1
                          : *std::max_element(horizons.begin(), horizons.end());
}

ExperimentConfig ConfigFromJson(const Json& j) {
  RequireObjectKeys(
      j,
      {"schema_version", "f1", "f2", "alpha", "beta", "prior", "priors",
       "utility", "horizon", "horizons", "n_max", "wealth", "wealths", "u_grid",
       "tx_grid", "ty", "policy", "method", "enumeration_cap", "samples", "seed",
       "tolerance", "output", "format"},
      "");
  Exclusive(j, {"prior", "priors"});
  Exclusive(j, {"horizon", "horizons", "n_max"});
  Exclusive(j, {"wealth", "wealths"});

  ExperimentConfig c;
  if (!j.contains("schema_version")) {
    throw JsonSchemaError("/schema_version", "missing required key");
  }
  c.schema_version = RequireInt(j["schema_version"], "/schema_version");
  if (j.contains("f1")) c.f1 = DistributionFromJson(j["f1"], "/f1");
  if (j.contains("f2")) c.f2 = DistributionFromJson(j["f2"], "/f2");
  if (j.contains("alpha")) c.alpha = RequireNumber(j["alpha"], "/alpha");
  if (j.contains("beta")) c.beta = RequireNumber(j["beta"], "/beta");
  if (j.contains("prior")) c.priors = {RequireNumber(j["prior"], "/prior")};
  if (j.contains("priors")) c.priors = NumberArray(j["priors"], "/priors");
  if (j.contains("utility")) c.utility = UtilityFromJson(j["utility"], "/utility");
  if (j.contains("horizon")) c.horizons = {RequireInt(j["horizon"], "/horizon")};
  if (j.contains("horizons")) {
    const Json& h = j["horizons"];
    if (!h.is_array()) throw JsonSchemaError("/horizons", "expected an array");
    for (std::size_t i = 0; i < h.size(); ++i) {
      c.horizons.push_back(RequireInt(h[i], "/horizons/" + std::to_string(i)));
    }
  }
  if (j.contains("n_max")) {
    const int n_max = RequireInt(j["n_max"], "/n_max");
    if (n_max < 1) throw JsonSchemaError("/n_max", "must be >= 1");
    for (int n = 1; n <= n_max; ++n) c.horizons.push_back(n);
  }
  if (j.contains("wealth")) c.wealths = {RequireNumber(j["wealth"], "/wealth")};
  if (j.contains("wealths")) c.wealths = NumberArray(j["wealths"], "/wealths");
  if (j.contains("u_grid")) c.u_grid = NumberArray(j["u_grid"], "/u_grid");
  if (j.contains("tx_grid")) c.tx_grid = NumberArray(j["tx_grid"], "/tx_grid");
  if (j.contains("ty")) c.ty = RequireNumber(j["ty"], "/ty");
  if (j.contains("policy")) {
    const Json& p = j["policy"];
    if (p.is_string()) {
      c.policy = p.get<std::string>();
    } else {
      RequireObjectKeys(p, {"tree"}, "/policy");
      if (!p.contains("tree")) {
        throw JsonSchemaError("/policy/tree", "missing required key");
      }
      c.tree = TreeFromJson(p["tree"], "/policy/tree");
      c.policy = "explicit";
    }
  }
  if (j.contains("method")) c.method = RequireString(j["method"], "/method");
  if (j.contains("enumeration_cap")) {
    c.enumeration_cap = RequireUint(j["enumeration_cap"], "/enumeration_cap");
  }
  if (j.contains("samples")) c.samples = RequireUint(j["samples"], "/samples");
  if (j.contains("seed")) c.seed = RequireUint(j["seed"], "/seed");
  if (j.contains("tolerance")) {
    c.tolerance = RequireNumber(j["tolerance"], "/tolerance");
  }
  if (j.contains("output")) c.output = RequireString(j["output"], "/output");
  if (j.contains("format")) {
    try {
      c.format = ParseFormat(RequireString(j["format"], "/format"));
    } catch (const InvalidParameters& e) {
      throw JsonSchemaError("/format", e.what());
    }
  }
  return c;
}

Json ToJson(const ExperimentConfig& c) {
  Json j;
  j["schema_version"] = c.schema_version;
  if (c.f1) j["f1"] = fbandit::ToJson(*c.f1);
  if (c.f2) j["f2"] = fbandit::ToJson(*c.f2);
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.beta) j["beta"] = *c.beta;
  if (!c.priors.empty()) j["priors"] = c.priors;
  j["utility"] = fbandit::ToJson(c.utility);
  if (!c.horizons.empty()) j["horizons"] = c.horizons;
  if (!c.wealths.empty()) j["wealths"] = c.wealths;
  if (!c.u_grid.empty()) j["u_grid"] = c.u_grid;
  if (!c.tx_grid.empty()) j["tx_grid"] = c.tx_grid;
  j["ty"] = c.ty;
  if (c.tree) {
    j["policy"] = Json{{"tree", fbandit::ToJson(*c.tree)}};
  } else {
    j["policy"] = c.policy;
  }
  j["method"] = c.method;
  j["enumeration_cap"] = c.enumeration_cap;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  if (c.output) j["output"] = *c.output;
  j["format"] = ToString(c.format);
  return j;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonSchemaError(path, "cannot open config file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonSchemaError(path, std::string("invalid JSON: ") + e.what());
  }
  return ConfigFromJson(j);
}

UtilityFn ParseUtilityFlag(const std::string& text) {
  if (text == "identity") return UtilityFn::MakeIdentity();
  if (text == "negated") {
    return UtilityFn::MakeNegated(UtilityFn::MakeIdentity());
  }
  const std::string prefix = "indicator:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string rest = text.substr(prefix.size());
      const double k = std::stod(rest, &used);
      if (used == rest.size()) return UtilityFn::MakeIndicator(k);
    } catch (const std::exception&) {
    }
  }
  throw InvalidParameters("--utility expects identity, negated or indicator:K, "
                          "got \"" + text + "\"");
}

ReportFormat ParseFormat(const std::string& text) {
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  if (text == "both") return ReportFormat::kBoth;
  throw InvalidParameters("format must be csv, json or both, got \"" + text +
                          "\"");
}

std::string ToString(ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv:
      return "csv";
    case ReportFormat::kJson:
      return "json";
    case ReportFormat::kBoth:
      return "both";
  }
  return "csv";
}

}  // namespace fbandit::cli
