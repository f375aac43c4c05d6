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

#include "fbandit/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fbandit {

std::string ToString(Arm arm) { return arm == Arm::kX ? "X" : "Y"; }

Arm ParseArm(const std::string& text) {
  if (text == "X") return Arm::kX;
  if (text == "Y") return Arm::kY;
  throw InvalidParameters("arm must be \"X\" or \"Y\", got \"" + text + "\"");
}

// ---------------------------------------------------------------------------
// FiniteDistribution

FiniteDistribution::FiniteDistribution(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InvalidDistribution("support must be nonempty");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!std::isfinite(a.value)) {
      throw InvalidDistribution("support values must be finite");
    }
    if (!std::isfinite(a.prob) || a.prob <= 0.0) {
      throw InvalidDistribution("every probability must be positive, got " +
                                std::to_string(a.prob));
    }
    if (i > 0 && !(atoms_[i - 1].value < a.value)) {
      throw InvalidDistribution("support values must be distinct");
    }
    total += a.prob;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities must sum to 1, got " << total;
    throw InvalidDistribution(os.str());
  }
}

FiniteDistribution FiniteDistribution::FromArrays(
    std::span<const double> values, std::span<const double> probs) {
  if (values.size() != probs.size()) {
    throw InvalidDistribution("values and probs must have equal length");
  }
  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    atoms.push_back({values[i], probs[i]});
  }
  return FiniteDistribution(std::move(atoms));
}

FiniteDistribution FiniteDistribution::Bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidDistribution("Bernoulli parameter must lie in [0, 1]");
  }
  if (p == 0.0) return FiniteDistribution({{0.0, 1.0}});
  if (p == 1.0) return FiniteDistribution({{1.0, 1.0}});
  return FiniteDistribution({{0.0, 1.0 - p}, {1.0, p}});
}

double FiniteDistribution::mass(double value) const {
  for (const Atom& a : atoms_) {
    if (std::abs(a.value - value) <= kProbTolerance) return a.prob;
  }
  return 0.0;
}

double FiniteDistribution::mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.value * a.prob;
  return m;
}

// ---------------------------------------------------------------------------
// Belief

Belief::Belief(double w1, double w2) : w1_(w1), w2_(w2) {
  if (!std::isfinite(w1) || !std::isfinite(w2) || w1 < 0.0 || w2 < 0.0 ||
      w1 + w2 <= 0.0) {
    throw InvalidParameters("belief weights must be finite, non-negative and "
                            "not both zero");
  }
}

Belief Belief::FromPrior(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw InvalidParameters("prior must lie in [0, 1]");
  }
  return Belief(xi, 1.0 - xi);
}

Belief Belief::Normalized() const {
  const double total = w1_ + w2_;
  return Belief(w1_ / total, w2_ / total);
}

// ---------------------------------------------------------------------------
// BanditInstance

BanditInstance::BanditInstance(FiniteDistribution f1, FiniteDistribution f2,
                               double prior)
    : f1_(std::move(f1)), f2_(std::move(f2)), prior_(prior) {
  if (!(prior >= 0.0 && prior <= 1.0)) {
    throw InvalidParameters("prior must lie in [0, 1]");
  }
  for (const Atom& a : f1_.support()) alphabet_.push_back(a.value);
  for (const Atom& a : f2_.support()) alphabet_.push_back(a.value);
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end(),
                              [](double a, double b) {
                                return std::abs(a - b) <= kProbTolerance;
                              }),
                  alphabet_.end());
  f1_mass_.reserve(alphabet_.size());
  f2_mass_.reserve(alphabet_.size());
  for (double v : alphabet_) {
    f1_mass_.push_back(f1_.mass(v));
    f2_mass_.push_back(f2_.mass(v));
  }
}

BanditInstance BanditInstance::Bernoulli(double alpha, double beta,
                                         double prior) {
  return BanditInstance(FiniteDistribution::Bernoulli(alpha),
                        FiniteDistribution::Bernoulli(beta), prior);
}

BanditInstance BanditInstance::WithPrior(double prior) const {
  BanditInstance copy = *this;
  if (!(prior >= 0.0 && prior <= 1.0)) {
    throw InvalidParameters("prior must lie in [0, 1]");
  }
  copy.prior_ = prior;
  return copy;
}

BanditInstance BanditInstance::Relabeled() const {
  return BanditInstance(f2_, f1_, 1.0 - prior_);
}

std::optional<std::size_t> BanditInstance::outcome_index(double value) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(),
                             value - kProbTolerance);
  if (it != alphabet_.end() && std::abs(*it - value) <= kProbTolerance) {
    return static_cast<std::size_t>(it - alphabet_.begin());
  }
  return std::nullopt;
}

bool BanditInstance::is_two_point_01() const {
  return std::all_of(alphabet_.begin(), alphabet_.end(),
                     [](double v) { return v == 0.0 || v == 1.0; });
}

// ---------------------------------------------------------------------------
// UtilityFn

UtilityFn UtilityFn::MakeIdentity() { return UtilityFn(Identity{}); }

UtilityFn UtilityFn::MakeIndicator(double k) {
  if (!std::isfinite(k)) throw InvalidParameters("indicator k must be finite");
  return UtilityFn(IndicatorThreshold{k});
}

UtilityFn UtilityFn::MakePiecewise(
    std::vector<std::pair<double, double>> points) {
  if (points.empty()) {
    throw InvalidParameters("piecewise utility needs at least one breakpoint");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second)) {
      throw InvalidParameters("piecewise breakpoints must be finite");
    }
    if (i > 0 && !(points[i - 1].first < points[i].first)) {
      throw InvalidParameters(
          "piecewise breakpoints must be strictly increasing in x");
    }
  }
  return UtilityFn(PiecewiseLinear{std::move(points)});
}

UtilityFn UtilityFn::MakeConstant(double c) { return MakePiecewise({{0.0, c}}); }

UtilityFn UtilityFn::MakeNegated(UtilityFn inner) {
  return UtilityFn(Negated{std::make_shared<const UtilityFn>(std::move(inner))});
}

namespace {

double EvalPiecewise(const std::vector<std::pair<double, double>>& pts,
                     double x) {
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  auto hi = std::upper_bound(
      pts.begin(), pts.end(), x,
      [](double v, const std::pair<double, double>& p) { return v < p.first; });
  auto lo = hi - 1;
  const double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

}  // namespace

double UtilityFn::operator()(double wealth) const {
  struct Visitor {
    double x;
    double operator()(const Identity&) const { return x; }
    double operator()(const IndicatorThreshold& ind) const {
      return x >= ind.k ? 1.0 : 0.0;
    }
    double operator()(const PiecewiseLinear& pw) const {
      return EvalPiecewise(pw.points, x);
    }
    double operator()(const Negated& neg) const { return -(*neg.inner)(x); }
  };
  return std::visit(Visitor{wealth}, variant_);
}

std::string UtilityFn::Describe() const {
  struct Visitor {
    std::string operator()(const Identity&) const { return "identity"; }
    std::string operator()(const IndicatorThreshold& ind) const {
      std::ostringstream os;
      os << "indicator(" << ind.k << ")";
      return os.str();
    }
    std::string operator()(const PiecewiseLinear& pw) const {
      return "piecewise(" + std::to_string(pw.points.size()) + " points)";
    }
    std::string operator()(const Negated& neg) const {
      return "negated(" + neg.inner->Describe() + ")";
    }
  };
  return std::visit(Visitor{}, variant_);
}

bool UtilityFn::operator==(const UtilityFn& other) const {
  if (variant_.index() != other.variant_.index()) return false;
  struct Visitor {
    const Variant& rhs;
    bool operator()(const Identity&) const { return true; }
    bool operator()(const IndicatorThreshold& ind) const {
      return ind.k == std::get<IndicatorThreshold>(rhs).k;
    }
    bool operator()(const PiecewiseLinear& pw) const {
      return pw.points == std::get<PiecewiseLinear>(rhs).points;
    }
    bool operator()(const Negated& neg) const {
      return *neg.inner == *std::get<Negated>(rhs).inner;
    }
  };
  return std::visit(Visitor{other.variant_}, variant_);
}

// ---------------------------------------------------------------------------
// ValueQuery

void ValueQuery::Validate() const {
  if (horizon < 1) {
    throw InvalidParameters("horizon must be >= 1, got " +
                            std::to_string(horizon));
  }
  if (!std::isfinite(wealth)) throw InvalidParameters("wealth must be finite");
}

// ---------------------------------------------------------------------------
// Posterior recursion

std::optional<Belief> TryPosteriorUpdateAt(const Belief& belief, Arm arm,
                                           std::size_t outcome,
                                           const BanditInstance& instance) {
  const double w1 = belief.w1() * instance.mass(Hypothesis::kH1, arm, outcome);
  const double w2 = belief.w2() * instance.mass(Hypothesis::kH2, arm, outcome);
  const double total = w1 + w2;
  if (!(total > 0.0)) return std::nullopt;
  return Belief(w1 / total, w2 / total);
}

Belief PosteriorUpdateAt(const Belief& belief, Arm arm, std::size_t outcome,
                         const BanditInstance& instance) {
  if (outcome >= instance.alphabet_size()) {
    throw ImpossibleObservation("outcome index out of range");
  }
  auto next = TryPosteriorUpdateAt(belief, arm, outcome, instance);
  if (!next) {
    std::ostringstream os;
    os.precision(17);
    os << "observation " << instance.alphabet()[outcome] << " on arm "
       << ToString(arm) << " has probability zero";
    throw ImpossibleObservation(os.str());
  }
  return *next;
}

Belief PosteriorUpdate(const Belief& belief, Arm arm, double outcome,
                       const BanditInstance& instance) {
  auto index = instance.outcome_index(outcome);
  if (!index) {
    std::ostringstream os;
    os.precision(17);
    os << "observation " << outcome << " is not in the value alphabet";
    throw ImpossibleObservation(os.str());
  }
  return PosteriorUpdateAt(belief, arm, *index, instance);
}

double MixtureOutcomeProb(const Belief& belief, Arm arm, double outcome,
                          const BanditInstance& instance) {
  auto index = instance.outcome_index(outcome);
  if (!index) return 0.0;
  return MixtureOutcomeProbAt(belief, arm, *index, instance);
}

}  // namespace fbandit
