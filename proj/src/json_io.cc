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

#include "fbandit/json_io.hpp"

#include <algorithm>
#include <cmath>

namespace fbandit {

void RequireObjectKeys(const Json& j, std::initializer_list<const char*> keys,
                       const std::string& path) {
  if (!j.is_object()) throw JsonSchemaError(path, "expected an object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) {
      return item.key() == k;
    });
    if (!known) {
      throw JsonSchemaError(path + "/" + item.key(), "unknown key");
    }
  }
}

double RequireNumber(const Json& j, const std::string& path) {
  if (!j.is_number()) throw JsonSchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw JsonSchemaError(path, "expected a finite number");
  return v;
}

int RequireInt(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw JsonSchemaError(path, "expected an integer");
  return j.get<int>();
}

namespace {

const Json& RequireKey(const Json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) {
    throw JsonSchemaError(path + "/" + key, "missing required key");
  }
  return j.at(key);
}

std::vector<double> RequireNumberArray(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonSchemaError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(RequireNumber(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Json ToJson(const FiniteDistribution& d) {
  Json values = Json::array();
  Json probs = Json::array();
  for (const Atom& a : d.support()) {
    values.push_back(a.value);
    probs.push_back(a.prob);
  }
  return Json{{"values", values}, {"probs", probs}};
}

FiniteDistribution DistributionFromJson(const Json& j,
                                        const std::string& path) {
  RequireObjectKeys(j, {"values", "probs"}, path);
  const auto values = RequireNumberArray(RequireKey(j, "values", path),
                                         path + "/values");
  const auto probs =
      RequireNumberArray(RequireKey(j, "probs", path), path + "/probs");
  try {
    return FiniteDistribution::FromArrays(values, probs);
  } catch (const InvalidDistribution& e) {
    throw JsonSchemaError(path, e.what());
  }
}

// ---------------------------------------------------------------------------

Json ToJson(const UtilityFn& u) {
  struct Visitor {
    Json operator()(const UtilityFn::Identity&) const {
      return Json{{"kind", "identity"}};
    }
    Json operator()(const UtilityFn::IndicatorThreshold& ind) const {
      return Json{{"kind", "indicator"}, {"k", ind.k}};
    }
    Json operator()(const UtilityFn::PiecewiseLinear& pw) const {
      Json points = Json::array();
      for (const auto& [x, y] : pw.points) points.push_back(Json::array({x, y}));
      return Json{{"kind", "piecewise"}, {"points", points}};
    }
    Json operator()(const UtilityFn::Negated& neg) const {
      return Json{{"kind", "negated"}, {"inner", ToJson(*neg.inner)}};
    }
  };
  return std::visit(Visitor{}, u.variant());
}

UtilityFn UtilityFromJson(const Json& j, const std::string& path) {
  if (!j.is_object()) throw JsonSchemaError(path, "expected an object");
  const Json& kind_json = RequireKey(j, "kind", path);
  if (!kind_json.is_string()) {
    throw JsonSchemaError(path + "/kind", "expected a string");
  }
  const std::string kind = kind_json.get<std::string>();
  try {
    if (kind == "identity") {
      RequireObjectKeys(j, {"kind"}, path);
      return UtilityFn::MakeIdentity();
    }
    if (kind == "indicator") {
      RequireObjectKeys(j, {"kind", "k"}, path);
      return UtilityFn::MakeIndicator(
          RequireNumber(RequireKey(j, "k", path), path + "/k"));
    }
    if (kind == "piecewise") {
      RequireObjectKeys(j, {"kind", "points"}, path);
      const Json& pts = RequireKey(j, "points", path);
      if (!pts.is_array()) {
        throw JsonSchemaError(path + "/points", "expected an array");
      }
      std::vector<std::pair<double, double>> points;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string p = path + "/points/" + std::to_string(i);
        const auto xy = RequireNumberArray(pts[i], p);
        if (xy.size() != 2) throw JsonSchemaError(p, "expected [x, phi(x)]");
        points.emplace_back(xy[0], xy[1]);
      }
      return UtilityFn::MakePiecewise(std::move(points));
    }
    if (kind == "negated") {
      RequireObjectKeys(j, {"kind", "inner"}, path);
      return UtilityFn::MakeNegated(
          UtilityFromJson(RequireKey(j, "inner", path), path + "/inner"));
    }
  } catch (const InvalidParameters& e) {
    throw JsonSchemaError(path, e.what());
  }
  throw JsonSchemaError(path + "/kind",
                        "unknown utility kind \"" + kind +
                            "\" (expected identity, indicator, piecewise, "
                            "negated)");
}

// ---------------------------------------------------------------------------

namespace {

Json TreeNodeToJson(const DecisionTree& tree, std::size_t node) {
  Json children = Json::array();
  if (!tree.is_leaf(node)) {
    for (std::size_t c = 0; c < tree.branching(); ++c) {
      children.push_back(TreeNodeToJson(tree, tree.child(node, c)));
    }
  }
  return Json{{"arm", ToString(tree.arm(node))}, {"children", children}};
}

// Measures depth and branching along the leftmost path.
// A missing "children" key marks a leaf.
const Json& ChildrenOf(const Json& node) {
  static const Json kNone = Json::array();
  const auto it = node.find("children");
  return it == node.end() ? kNone : *it;
}

void ProbeShape(const Json& j, const std::string& path, int& depth,
                std::size_t& branching) {
  depth = 0;
  branching = 0;
  const Json* node = &j;
  std::string p = path;
  while (true) {
    RequireObjectKeys(*node, {"arm", "children"}, p);
    const Json& children = ChildrenOf(*node);
    if (!children.is_array()) {
      throw JsonSchemaError(p + "/children", "expected an array");
    }
    ++depth;
    if (children.empty()) break;
    if (branching == 0) branching = children.size();
    node = &children[0];
    p += "/children/0";
  }
  if (branching == 0) branching = 1;
}

void ParseTreeNode(const Json& j, const std::string& path, int level, int depth,
                   std::size_t branching, std::size_t node,
                   std::vector<Arm>& arms) {
  RequireObjectKeys(j, {"arm", "children"}, path);
  const Json& arm = RequireKey(j, "arm", path);
  if (!arm.is_string() || (arm != "X" && arm != "Y")) {
    throw JsonSchemaError(path + "/arm", "expected \"X\" or \"Y\"");
  }
  arms[node] = ParseArm(arm.get<std::string>());
  const Json& children = ChildrenOf(j);
  if (!children.is_array()) {
    throw JsonSchemaError(path + "/children", "expected an array");
  }
  const bool leaf = level + 1 == depth;
  const std::size_t expected = leaf ? 0 : branching;
  if (children.size() != expected) {
    throw JsonSchemaError(path + "/children",
                          "expected " + std::to_string(expected) +
                              " children for a uniform tree of depth " +
                              std::to_string(depth));
  }
  for (std::size_t c = 0; c < children.size(); ++c) {
    ParseTreeNode(children[c], path + "/children/" + std::to_string(c),
                  level + 1, depth, branching, node * branching + 1 + c, arms);
  }
}

}  // namespace

Json ToJson(const DecisionTree& tree) { return TreeNodeToJson(tree, 0); }

DecisionTree TreeFromJson(const Json& j, const std::string& path) {
  int depth = 0;
  std::size_t branching = 0;
  ProbeShape(j, path, depth, branching);
  std::vector<Arm> arms(DecisionTree::NodeCount(branching, depth), Arm::kX);
  ParseTreeNode(j, path, 0, depth, branching, 0, arms);
  return DecisionTree(branching, depth, std::move(arms));
}

// ---------------------------------------------------------------------------

Json ToJson(const Witness& w) {
  Json j = Json::object();
  if (w.xi0) j["xi0"] = *w.xi0;
  if (w.n) j["n"] = *w.n;
  if (w.x) j["x"] = *w.x;
  if (w.k) j["k"] = *w.k;
  if (w.u) j["u"] = *w.u;
  if (w.t_x) j["t_x"] = *w.t_x;
  return j;
}

Json ToJson(const Verdict& v) {
  return Json{{"passed", v.passed},
              {"margin", v.margin},
              {"witness", v.witness ? ToJson(*v.witness) : Json(nullptr)}};
}

Json ToJson(const SimResult& r) {
  return Json{{"mean", r.mean},           {"std_error", r.std_error},
              {"samples", r.samples},     {"seed", r.seed},
              {"generator", r.generator}, {"h1_draws", r.h1_draws}};
}

}  // namespace fbandit
