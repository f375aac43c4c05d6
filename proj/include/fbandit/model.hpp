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

#ifndef FBANDIT_MODEL_HPP_
#define FBANDIT_MODEL_HPP_

// Core domain types of the two-armed bandit with swapped hypotheses:
//
//            X     Y
//   H1 :    F1    F2      (prior xi0)
//   H2 :    F2    F1      (prior 1 - xi0)
//
// Payoff laws are finite-support. Both arms share one value alphabet (the
// union of the two supports), and outcomes are addressed by their position in
// that alphabet on the hot paths.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fbandit/errors.hpp"

namespace fbandit {

// Absolute tolerance for probability bookkeeping (sums, value lookups).
inline constexpr double kProbTolerance = 1e-12;

enum class Hypothesis { kH1, kH2 };

// kX is theta_i = 1, kY is theta_i = 0.
enum class Arm { kX, kY };

inline Arm Other(Arm arm) { return arm == Arm::kX ? Arm::kY : Arm::kX; }
std::string ToString(Arm arm);
Arm ParseArm(const std::string& text);

struct Atom {
  double value;
  double prob;

  bool operator==(const Atom&) const = default;
};

// A payoff law with finitely many atoms. Atoms are stored in strictly
// increasing value order, every probability is positive and they sum to one.
class FiniteDistribution {
 public:
  // Atoms may be given in any order; they are sorted by value. Throws
  // InvalidDistribution on empty support, duplicate values, non-positive or
  // non-finite probabilities, or a total mass away from 1 by more than
  // kProbTolerance.
  explicit FiniteDistribution(std::vector<Atom> atoms);

  static FiniteDistribution FromArrays(std::span<const double> values,
                                       std::span<const double> probs);

  // Bernoulli(p) on {0, 1}. The degenerate cases p = 0 and p = 1 collapse to
  // a single atom.
  static FiniteDistribution Bernoulli(double p);

  std::span<const Atom> support() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // Probability of `value`, 0 when it is not an atom.
  double mass(double value) const;
  double mean() const;

  bool operator==(const FiniteDistribution&) const = default;

 private:
  std::vector<Atom> atoms_;
};

// Unnormalized hypothesis weights (w1, w2); xi = w1 / (w1 + w2).
class Belief {
 public:
  // Throws InvalidParameters unless both weights are finite, non-negative and
  // not both zero.
  Belief(double w1, double w2);

  static Belief FromPrior(double xi);

  double w1() const { return w1_; }
  double w2() const { return w2_; }
  double xi() const { return w1_ / (w1_ + w2_); }

  Belief Normalized() const;

 private:
  double w1_;
  double w2_;
};

class BanditInstance {
 public:
  BanditInstance(FiniteDistribution f1, FiniteDistribution f2, double prior);

  static BanditInstance Bernoulli(double alpha, double beta, double prior);

  const FiniteDistribution& f1() const { return f1_; }
  const FiniteDistribution& f2() const { return f2_; }
  double prior() const { return prior_; }
  Belief prior_belief() const { return Belief::FromPrior(prior_); }

  BanditInstance WithPrior(double prior) const;

  // The same physical bandit with the hypothesis labels exchanged:
  // (F1, F2, xi0) -> (F2, F1, 1 - xi0).
  BanditInstance Relabeled() const;

  // Union of both supports, strictly increasing.
  std::span<const double> alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }

  double f1_mass(std::size_t outcome) const { return f1_mass_[outcome]; }
  double f2_mass(std::size_t outcome) const { return f2_mass_[outcome]; }

  // Mass of `outcome` when `arm` is pulled and `hypothesis` holds: F1 for
  // (H1, X) and (H2, Y), F2 for (H1, Y) and (H2, X).
  double mass(Hypothesis hypothesis, Arm arm, std::size_t outcome) const {
    const bool uses_f1 = (hypothesis == Hypothesis::kH1) == (arm == Arm::kX);
    return uses_f1 ? f1_mass_[outcome] : f2_mass_[outcome];
  }

  // Position of `value` in the alphabet (matched within kProbTolerance).
  std::optional<std::size_t> outcome_index(double value) const;

  // True when both laws live on {0, 1}.
  bool is_two_point_01() const;

 private:
  FiniteDistribution f1_;
  FiniteDistribution f2_;
  double prior_;
  std::vector<double> alphabet_;
  std::vector<double> f1_mass_;
  std::vector<double> f2_mass_;
};

// The utility phi applied to terminal wealth.
class UtilityFn {
 public:
  struct Identity {};
  // 1 at arguments >= k, 0 otherwise.
  struct IndicatorThreshold {
    double k;
  };
  // Linear interpolation between breakpoints, constant outside them. One
  // breakpoint gives a constant utility.
  struct PiecewiseLinear {
    std::vector<std::pair<double, double>> points;
  };
  struct Negated {
    std::shared_ptr<const UtilityFn> inner;
  };
  using Variant =
      std::variant<Identity, IndicatorThreshold, PiecewiseLinear, Negated>;

  static UtilityFn MakeIdentity();
  static UtilityFn MakeIndicator(double k);
  // Throws InvalidParameters unless breakpoints are finite, nonempty and
  // strictly increasing in x.
  static UtilityFn MakePiecewise(std::vector<std::pair<double, double>> points);
  static UtilityFn MakeConstant(double c);
  static UtilityFn MakeNegated(UtilityFn inner);

  double operator()(double wealth) const;

  const Variant& variant() const { return variant_; }
  std::string Describe() const;

  bool operator==(const UtilityFn& other) const;

 private:
  explicit UtilityFn(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

// A (xi0, n, x)-bandit together with its utility. The prior lives in the
// instance.
struct ValueQuery {
  BanditInstance instance;
  UtilityFn utility;
  int horizon;
  double wealth;

  // Throws InvalidParameters when horizon < 1 or wealth is not finite.
  void Validate() const;
};

// Bayes update after observing `outcome` on `arm`, renormalized so that the
// weights sum to one. Throws ImpossibleObservation when the outcome is not in
// the alphabet or has probability zero under the current belief.
Belief PosteriorUpdate(const Belief& belief, Arm arm, double outcome,
                       const BanditInstance& instance);
Belief PosteriorUpdateAt(const Belief& belief, Arm arm, std::size_t outcome,
                         const BanditInstance& instance);

// Returns std::nullopt instead of throwing when the outcome has zero
// probability under `belief`.
std::optional<Belief> TryPosteriorUpdateAt(const Belief& belief, Arm arm,
                                           std::size_t outcome,
                                           const BanditInstance& instance);

// E[g(payoff) | hypothesis] when `arm` is pulled.
template <typename G>
double ExpectationUnder(Hypothesis hypothesis, Arm arm, const G& g,
                        const BanditInstance& instance) {
  double total = 0.0;
  const auto alphabet = instance.alphabet();
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    const double m = instance.mass(hypothesis, arm, s);
    if (m > 0.0) total += g(alphabet[s]) * m;
  }
  return total;
}

// xi * mass_H1(outcome) + (1 - xi) * mass_H2(outcome).
double MixtureOutcomeProb(const Belief& belief, Arm arm, double outcome,
                          const BanditInstance& instance);

inline double MixtureOutcomeProbAt(const Belief& belief, Arm arm,
                                   std::size_t outcome,
                                   const BanditInstance& instance) {
  const double xi = belief.xi();
  return xi * instance.mass(Hypothesis::kH1, arm, outcome) +
         (1.0 - xi) * instance.mass(Hypothesis::kH2, arm, outcome);
}

}  // namespace fbandit

#endif  // FBANDIT_MODEL_HPP_
