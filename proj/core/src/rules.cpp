#include "peerscore/rules.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "peerscore/error.hpp"
#include "peerscore/random.hpp"

namespace peerscore {

namespace {

constexpr double kCumulativeTolerance = 1e-12;

void RequireOutcome(const ProbabilityVector& z, Outcome e) {
  if (e.index >= z.size()) {
    throw DimensionError("outcome " + std::to_string(e.index) +
                         " is outside a forecast over " +
                         std::to_string(z.size()) + " outcomes");
  }
}

double RankedProbability(const ProbabilityVector& z, Outcome e) {
  const auto cdf = z.Cumulative();
  double penalty = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    const double miss = k < e.index ? cdf[k] : 1.0 - cdf[k];
    penalty += miss * miss;
  }
  return -penalty;
}

}  // namespace

std::string_view RuleName(Rule rule) {
  switch (rule) {
    case Rule::kLogarithmic:
      return "logarithmic";
    case Rule::kQuadratic:
      return "quadratic";
    case Rule::kSpherical:
      return "spherical";
    case Rule::kRankedProbability:
      return "rps";
  }
  return "unknown";
}

std::optional<Rule> ParseRule(std::string_view name) {
  if (name == "logarithmic" || name == "log") return Rule::kLogarithmic;
  if (name == "quadratic") return Rule::kQuadratic;
  if (name == "spherical") return Rule::kSpherical;
  if (name == "rps") return Rule::kRankedProbability;
  return std::nullopt;
}

ScoringRuleSpec::ScoringRuleSpec(Rule rule, double gamma, double lambda)
    : rule_(rule), gamma_(gamma), lambda_(lambda) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("scoring rule scale gamma must be positive and finite");
  }
  if (!std::isfinite(lambda)) {
    throw DomainError("scoring rule shift lambda must be finite");
  }
}

ScoringRuleSpec ScoringRuleSpec::Normalized(Rule rule, double origin, double unit) {
  if (!std::isfinite(origin) || !(unit > 0.0) || !std::isfinite(unit)) {
    throw DomainError("normalized scoring rule needs a finite origin and a positive unit");
  }
  ScoringRuleSpec spec(rule, 1.0 / unit, -origin / unit);
  spec.origin_ = origin;
  spec.unit_ = unit;
  return spec;
}

double BaseScore(Rule rule, const ProbabilityVector& z, Outcome e) {
  RequireOutcome(z, e);
  const double ze = z[e.index];
  switch (rule) {
    case Rule::kLogarithmic:
      if (ze == 0.0) throw UnboundedScoreError(e.index);
      return std::log(ze);
    case Rule::kQuadratic:
      return 2.0 * ze - z.SquaredNorm();
    case Rule::kSpherical:
      return ze / std::sqrt(z.SquaredNorm());
    case Rule::kRankedProbability:
      return RankedProbability(z, e);
  }
  throw DomainError("unknown scoring rule");
}

double Evaluate(const ScoringRuleSpec& spec, const ProbabilityVector& z,
                Outcome e) {
  return spec.Apply(BaseScore(spec.rule(), z, e));
}

double ExpectedScore(const ScoringRuleSpec& spec, const ProbabilityVector& z,
                     const ProbabilityVector& q) {
  RequireSameSize(z, q);
  double total = 0.0;
  for (std::size_t e = 0; e < q.size(); ++e) {
    if (q[e] == 0.0) continue;
    total += q[e] * Evaluate(spec, z, Outcome(e));
  }
  return total;
}

bool IsMoreDistant(const ProbabilityVector& zprime, const ProbabilityVector& z,
                   Outcome j) {
  RequireSameSize(zprime, z);
  RequireOutcome(z, j);
  const auto far = zprime.Cumulative();
  const auto near = z.Cumulative();
  bool differs = false;
  for (std::size_t k = 0; k < far.size(); ++k) {
    const double gap = far[k] - near[k];
    if (k < j.index ? gap < -kCumulativeTolerance : gap > kCumulativeTolerance) {
      return false;
    }
    if (std::abs(gap) > kCumulativeTolerance) differs = true;
  }
  return differs;
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kRmsd:
      return "rmsd";
    case Metric::kRenormalizedL2:
      return "renormalized-l2";
  }
  return "unknown";
}

double Distance(Metric metric, const ProbabilityVector& a,
                const ProbabilityVector& b) {
  RequireSameSize(a, b);
  const double scale_a =
      metric == Metric::kRenormalizedL2 ? 1.0 / std::sqrt(a.SquaredNorm()) : 1.0;
  const double scale_b =
      metric == Metric::kRenormalizedL2 ? 1.0 / std::sqrt(b.SquaredNorm()) : 1.0;
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] * scale_a - b[k] * scale_b;
    total += d * d;
  }
  if (metric == Metric::kRmsd) total /= static_cast<double>(a.size());
  return std::sqrt(total);
}

double EffectivenessReport::fraction() const noexcept {
  return informative == 0 ? 0.0
                          : static_cast<double>(consistent) /
                                static_cast<double>(informative);
}

EffectivenessReport CheckEffectiveness(
    const ScoringRuleSpec& spec, Metric metric,
    std::span<const EffectivenessTriple> triples) {
  if (spec.rule() == Rule::kLogarithmic) {
    throw PreconditionError(
        "the logarithmic rule is not effective with respect to any metric");
  }
  const bool paired =
      (spec.rule() == Rule::kQuadratic && metric == Metric::kRmsd) ||
      (spec.rule() == Rule::kSpherical && metric == Metric::kRenormalizedL2);
  if (!paired) {
    throw PreconditionError(std::string("rule ") +
                            std::string(RuleName(spec.rule())) +
                            " is not paired with metric " +
                            std::string(MetricName(metric)));
  }

  EffectivenessReport report;
  for (const auto& t : triples) {
    ++report.samples;
    const double d_first = Distance(metric, t.reference, t.first);
    const double d_second = Distance(metric, t.reference, t.second);
    const double s_first = ExpectedScore(spec, t.first, t.reference);
    const double s_second = ExpectedScore(spec, t.second, t.reference);
    if (d_first == d_second || s_first == s_second) {
      ++report.ties;
      continue;
    }
    ++report.informative;
    if ((d_first < d_second) == (s_first > s_second)) ++report.consistent;
  }
  return report;
}

EffectivenessReport CheckEffectiveness(const ScoringRuleSpec& spec,
                                       Metric metric, std::size_t samples,
                                       std::uint64_t seed,
                                       std::size_t outcomes) {
  if (samples == 0) throw PreconditionError("effectiveness needs samples >= 1");
  const std::vector<double> flat(outcomes, 1.0);
  std::vector<EffectivenessTriple> triples;
  triples.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = MakeRng(seed, s);
    auto reference = SampleDirichlet(rng, flat);
    auto first = SampleDirichlet(rng, flat);
    auto second = SampleDirichlet(rng, flat);
    triples.push_back({std::move(reference), std::move(first), std::move(second)});
  }
  return CheckEffectiveness(spec, metric, triples);
}

}  // namespace peerscore
