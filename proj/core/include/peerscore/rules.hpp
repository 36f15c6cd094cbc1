#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "peerscore/probability.hpp"

namespace peerscore {

enum class Rule {
  kLogarithmic,
  kQuadratic,
  kSpherical,
  kRankedProbability,
};

std::string_view RuleName(Rule rule);
// Accepts "logarithmic"/"log", "quadratic", "spherical", "rps".
std::optional<Rule> ParseRule(std::string_view name);

// Permutation-invariant rules: R(pi z, pi e) == R(z, e).
constexpr bool IsSymmetric(Rule rule) {
  return rule != Rule::kRankedProbability;
}
// Finite for every probability vector and outcome.
constexpr bool IsBounded(Rule rule) { return rule != Rule::kLogarithmic; }

// A base rule R together with the positive affine map gamma * R + lambda.
class ScoringRuleSpec {
 public:
  explicit ScoringRuleSpec(Rule rule, double gamma = 1.0, double lambda = 0.0);

  // The map (R - origin) / unit, i.e. gamma = 1 / unit and
  // lambda = -origin / unit. R == origin maps to exactly 0 and
  // R == origin + unit (computed as such) to exactly 1.
  static ScoringRuleSpec Normalized(Rule rule, double origin, double unit);

  Rule rule() const noexcept { return rule_; }
  double gamma() const noexcept { return gamma_; }
  double lambda() const noexcept { return lambda_; }

  ScoringRuleSpec WithAffine(double gamma, double lambda) const {
    return ScoringRuleSpec(rule_, gamma, lambda);
  }

  // Applies the affine map to an untransformed rule value.
  double Apply(double base) const noexcept {
    return unit_ ? (base - origin_) / unit_ : gamma_ * base + lambda_;
  }

  friend bool operator==(const ScoringRuleSpec&,
                         const ScoringRuleSpec&) = default;

 private:
  Rule rule_;
  double gamma_;
  double lambda_;
  double origin_ = 0.0;
  double unit_ = 0.0;  // non-zero for the normalized form
};

// Untransformed rule value R(z, e).
//
//   logarithmic  log z_e                                  (-inf, 0]
//   quadratic    2 z_e - sum_k z_k^2                       [-1, 1]
//   spherical    z_e / sqrt(sum_k z_k^2)                   [0, 1]
//   rps          -sum_{k<e} Z_k^2 - sum_{k>=e} (1 - Z_k)^2 [-v, 0]
//
// Throws UnboundedScoreError for the logarithmic rule when z_e == 0 and
// DimensionError when e is not an outcome of z.
double BaseScore(Rule rule, const ProbabilityVector& z, Outcome e);

// gamma * R(z, e) + lambda.
double Evaluate(const ScoringRuleSpec& spec, const ProbabilityVector& z,
                Outcome e);

// sum_e q_e * Evaluate(spec, z, e). Outcomes with q_e == 0 are skipped, so a
// logarithmic forecast only needs mass where q has mass.
double ExpectedScore(const ScoringRuleSpec& spec, const ProbabilityVector& z,
                     const ProbabilityVector& q);

// True when zprime sits farther from outcome j than z in the cumulative
// (ranked) sense: Z'_k >= Z_k below j, Z'_k <= Z_k from j on, and the two
// vectors differ.
bool IsMoreDistant(const ProbabilityVector& zprime, const ProbabilityVector& z,
                   Outcome j);

enum class Metric {
  kRmsd,            // root-mean-square deviation
  kRenormalizedL2,  // L2 distance between the vectors scaled to unit length
};

std::string_view MetricName(Metric metric);
double Distance(Metric metric, const ProbabilityVector& a,
                const ProbabilityVector& b);

struct EffectivenessTriple {
  ProbabilityVector reference;  // the belief the expectation is taken under
  ProbabilityVector first;
  ProbabilityVector second;
};

struct EffectivenessReport {
  std::size_t samples = 0;
  std::size_t ties = 0;         // excluded: equal distances or equal scores
  std::size_t informative = 0;  // samples - ties
  std::size_t consistent = 0;   // informative samples obeying the ordering

  bool has_informative() const noexcept { return informative > 0; }
  // consistent / informative; 0 when nothing was informative.
  double fraction() const noexcept;
};

// Counts how often closeness under `metric` and a higher expected score
// agree: M(ref, a) < M(ref, b) iff E_ref[R(a)] > E_ref[R(b)]. Only the
// pairings quadratic/RMSD and spherical/renormalized-L2 are accepted; the
// logarithmic rule is rejected outright.
EffectivenessReport CheckEffectiveness(
    const ScoringRuleSpec& spec, Metric metric,
    std::span<const EffectivenessTriple> triples);

// Same check over `samples` triples drawn uniformly from the simplex with
// `outcomes` entries.
EffectivenessReport CheckEffectiveness(const ScoringRuleSpec& spec,
                                       Metric metric, std::size_t samples,
                                       std::uint64_t seed,
                                       std::size_t outcomes = 5);

}  // namespace peerscore
