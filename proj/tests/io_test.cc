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

#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/report.hpp"
#include "doctest.h"
#include "fbandit/json_io.hpp"

namespace fbandit {
namespace {

std::string PathOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const JsonSchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TEST_SUITE("io") {

TEST_CASE("distribution json") {
  const FiniteDistribution d({{0, 0.25}, {2.5, 0.75}});
  CHECK(DistributionFromJson(ToJson(d)) == d);
  CHECK(PathOf([] { DistributionFromJson(Json::parse(R"({"values":[0,1]})"), "/f1"); }) ==
        "/f1/probs");
  CHECK(PathOf([] {
          DistributionFromJson(Json::parse(R"({"values":[0,"a"],"probs":[1,0]})"), "/f1");
        }) == "/f1/values/1");
  CHECK(PathOf([] {
          DistributionFromJson(Json::parse(R"({"values":[0,1],"probs":[0.5,0.6]})"),
                               "/f2");
        }) == "/f2");
}

TEST_CASE("utility json") {
  for (const UtilityFn& u :
       {UtilityFn::MakeIdentity(), UtilityFn::MakeIndicator(3),
        UtilityFn::MakePiecewise({{0, 1}, {2, 5}}),
        UtilityFn::MakeNegated(UtilityFn::MakeIndicator(1))}) {
    CHECK(UtilityFromJson(ToJson(u)) == u);
  }
  CHECK(PathOf([] { UtilityFromJson(Json::parse(R"({"kind":"cubic"})"), "/utility"); }) ==
        "/utility/kind");
  CHECK(PathOf([] {
          UtilityFromJson(Json::parse(R"({"kind":"negated","inner":{"kind":"x"}})"),
                          "/utility");
        }) == "/utility/inner/kind");
}

TEST_CASE("tree json") {
  const DecisionTree t(2, 2, {Arm::kX, Arm::kY, Arm::kX});
  CHECK(TreeFromJson(ToJson(t)) == t);
  CHECK(TreeFromJson(Json::parse(R"({"arm":"Y"})")).arm() == Arm::kY);
  const Json ragged = Json::parse(
      R"({"arm":"X","children":[{"arm":"X"},{"arm":"Y","children":[{"arm":"X"},{"arm":"X"}]}]})");
  CHECK(PathOf([&] { TreeFromJson(ragged, "/policy/tree"); }) != "<no error>");
}

TEST_CASE("config parsing") {
  const Json j = Json::parse(R"({
    "schema_version": 1, "alpha": 0.7, "beta": 0.3, "n_max": 3,
    "utility": {"kind": "indicator", "k": 2}, "seed": 5})");
  cli::ExperimentConfig c = cli::ConfigFromJson(j);
  c.ApplyDefaults();
  c.Validate();
  CHECK(c.horizons == std::vector<int>{1, 2, 3});
  CHECK(c.priors.size() == 11);
  CHECK(c.wealths == std::vector<double>{0.0});
  CHECK(c.seed == 5);
  CHECK(c.utility == UtilityFn::MakeIndicator(2));

  // Normalized output parses back to the same config.
  CHECK(cli::ConfigFromJson(cli::ToJson(c)) == c);

  CHECK(PathOf([] { cli::ConfigFromJson(Json::parse(R"({"alpha":0.7})")); }) ==
        "/schema_version");
  CHECK(PathOf([] {
          cli::ConfigFromJson(Json::parse(R"({"schema_version":1,"colour":1})"));
        }) == "/colour");
  CHECK(PathOf([] {
          cli::ConfigFromJson(
              Json::parse(R"({"schema_version":1,"horizon":2,"n_max":3})"));
        }) != "<no error>");
  CHECK(PathOf([] {
          auto c = cli::ConfigFromJson(
              Json::parse(R"({"schema_version":1,"alpha":0.7})"));
          c.ApplyDefaults();
          c.Validate();
        }) == "/beta");
  CHECK(PathOf([] {
          auto c = cli::ConfigFromJson(Json::parse(
              R"({"schema_version":1,"alpha":0.7,"beta":0.3,"priors":[0.5,1.5]})"));
          c.ApplyDefaults();
          c.Validate();
        }).rfind("/priors", 0) == 0);
  CHECK(PathOf([] {
          auto c = cli::ConfigFromJson(Json::parse(
              R"({"schema_version":2,"alpha":0.7,"beta":0.3})"));
          c.ApplyDefaults();
          c.Validate();
        }) == "/schema_version");
  CHECK(PathOf([] {
          auto c = cli::ConfigFromJson(Json::parse(
              R"({"schema_version":1,"alpha":0.7,"beta":0.3,"policy":"greedy"})"));
          c.ApplyDefaults();
          c.Validate();
        }) == "/policy");
}

TEST_CASE("config with explicit laws and tree") {
  const Json j = Json::parse(R"({
    "schema_version": 1,
    "f1": {"values": [0, 1, 2], "probs": [0.2, 0.3, 0.5]},
    "f2": {"values": [0, 1, 2], "probs": [0.5, 0.3, 0.2]},
    "prior": 0.4, "horizon": 2,
    "policy": {"tree": {"arm": "X", "children": [{"arm": "X"}, {"arm": "Y"}, {"arm": "X"}]}}
  })");
  cli::ExperimentConfig c = cli::ConfigFromJson(j);
  c.ApplyDefaults();
  c.Validate();
  CHECK(c.Instance().alphabet_size() == 3);
  const PolicySpec p = c.Policy();
  REQUIRE(std::holds_alternative<DecisionTree>(p));
  CHECK(std::get<DecisionTree>(p).arm(2) == Arm::kY);
  CHECK(cli::ConfigFromJson(cli::ToJson(c)) == c);
}

TEST_CASE("csv and json reports") {
  cli::Report r;
  r.columns = {"a", "b", "c"};
  r.rows.push_back({{0.1, std::int64_t{3}, std::string("X")}});
  std::ostringstream csv;
  cli::WriteCsv(r, csv);
  CHECK(csv.str() == "a,b,c\n0.10000000000000001,3,X\n");
  std::ostringstream json;
  cli::WriteJson(r, json);
  const Json parsed = Json::parse(json.str());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["b"] == 3);
  CHECK(parsed[0]["c"] == "X");
  CHECK(cli::FormatCell(std::monostate{}).empty());
  CHECK(cli::FormatCell(true) == "true");
}

TEST_CASE("emitting reports") {
  const std::string dir = FBANDIT_TEST_TMPDIR;
  cli::Report r;
  r.columns = {"x"};
  r.rows.push_back({{1.5}});
  const auto paths = cli::EmitReport(r, cli::ReportFormat::kBoth, dir + "/emit.csv");
  REQUIRE(paths.size() == 2);
  CHECK(paths[1] == dir + "/emit.json");
  CHECK(Slurp(paths[0]) == "x\n1.5\n");
  const std::string first = Slurp(paths[1]);
  cli::EmitReport(r, cli::ReportFormat::kBoth, dir + "/emit.csv");
  CHECK(Slurp(paths[1]) == first);

  cli::Report empty;
  empty.columns = {"x"};
  CHECK_THROWS(cli::EmitReport(empty, cli::ReportFormat::kCsv, dir + "/empty.csv"));
  CHECK_NOTHROW(
      cli::EmitReport(empty, cli::ReportFormat::kCsv, dir + "/empty.csv", true));
  CHECK_THROWS(cli::EmitReport(r, cli::ReportFormat::kCsv, dir + "/no/such/dir/r.csv"));
}

TEST_CASE("grid traversal order") {
  cli::ExperimentConfig c;
  c.alpha = 0.7;
  c.beta = 0.3;
  c.horizons = {1, 2, 3, 4, 5, 6};
  c.ApplyDefaults();
  c.Validate();
  const cli::CommandOutcome out = cli::Dispatch("value", c);
  REQUIRE(out.report.rows.size() == 66);
  for (std::size_t i = 0; i < 66; ++i) {
    const auto& row = out.report.rows[i].values;
    CHECK(std::get<double>(row[0]) == doctest::Approx((i / 6) / 10.0));
    CHECK(std::get<std::int64_t>(row[1]) == static_cast<std::int64_t>(i % 6 + 1));
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace fbandit
