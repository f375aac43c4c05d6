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

#ifndef FBANDIT_JSON_IO_HPP_
#define FBANDIT_JSON_IO_HPP_

// JSON forms of the library's value types.
//
//   FiniteDistribution  {"values": [...], "probs": [...]}
//   UtilityFn           {"kind": "identity"}
//                       {"kind": "indicator", "k": 2}
//                       {"kind": "piecewise", "points": [[x, phi], ...]}
//                       {"kind": "negated", "inner": {...}}
//   DecisionTree        {"arm": "X"|"Y", "children": [...]}
//   Verdict             {"passed": bool, "margin": float, "witness": {...}|null}
//   SimResult           {"mean", "std_error", "samples", "seed", "generator",
//                        "h1_draws"}
//
// Parsers are strict: unknown keys and wrong types raise JsonSchemaError
// carrying a JSON-pointer style path to the offending element.

#include <string>

#include "json.hpp"

#include "fbandit/analysis.hpp"
#include "fbandit/errors.hpp"
#include "fbandit/model.hpp"
#include "fbandit/montecarlo.hpp"
#include "fbandit/strategies.hpp"

namespace fbandit {

using Json = nlohmann::ordered_json;

class JsonSchemaError : public BanditError {
 public:
  JsonSchemaError(const std::string& path, const std::string& message)
      : BanditError(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Raises JsonSchemaError unless `j` is an object whose keys are all listed.
void RequireObjectKeys(const Json& j, std::initializer_list<const char*> keys,
                       const std::string& path);
double RequireNumber(const Json& j, const std::string& path);
int RequireInt(const Json& j, const std::string& path);

Json ToJson(const FiniteDistribution& d);
FiniteDistribution DistributionFromJson(const Json& j,
                                        const std::string& path = "");

Json ToJson(const UtilityFn& u);
UtilityFn UtilityFromJson(const Json& j, const std::string& path = "");

Json ToJson(const DecisionTree& tree);
// Throws JsonSchemaError when leaves sit at different depths or internal
// nodes have differing child counts.
DecisionTree TreeFromJson(const Json& j, const std::string& path = "");

Json ToJson(const Witness& w);
Json ToJson(const Verdict& v);
Json ToJson(const SimResult& r);

}  // namespace fbandit

#endif  // FBANDIT_JSON_IO_HPP_
