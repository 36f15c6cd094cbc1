#include "peerscore/panel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peerscore/error.hpp"
#include "peerscore/random.hpp"

namespace peerscore {

namespace {

constexpr double kTwoValueTolerance = 1e-12;

bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <=
         kTwoValueTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<std::string> DefaultIds(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i + 1);
  return ids;
}

}  // namespace

ReviewPanel::ReviewPanel(DirichletPrior prior, std::vector<Review> reviews,
                         std::vector<std::string> reviewer_ids)
    : prior_(std::move(prior)),
      reviews_(std::move(reviews)),
      reviewer_ids_(std::move(reviewer_ids)) {
  if (reviews_.size() < 2) {
    throw PreconditionError("a review panel needs at least two reviewers, got " +
                            std::to_string(reviews_.size()));
  }
  if (reviewer_ids_.empty()) reviewer_ids_ = DefaultIds(reviews_.size());
  if (reviewer_ids_.size() != reviews_.size()) {
    throw DimensionError("reviewer id count does not match review count");
  }
  const std::size_t rho = reviews_.front().rho();
  for (std::size_t i = 0; i < reviews_.size(); ++i) {
    if (reviews_[i].rho() != rho) {
      throw DimensionError("reviewer " + reviewer_ids_[i] + " reports " +
                           std::to_string(reviews_[i].rho()) +
                           " scores, expected " + std::to_string(rho));
    }
    RequireInRange(reviews_[i], prior_.best_score());
  }
}

ReviewPanel ReviewPanel::Criterion(std::size_t c) const {
  if (c >= rho()) throw DimensionError("criterion index out of range");
  std::vector<Review> single;
  single.reserve(size());
  for (const auto& r : reviews_) single.push_back(Review{r[c]});
  return ReviewPanel(prior_, std::move(single), reviewer_ids_);
}

ReviewPanel ReviewPanel::Select(const std::vector<std::size_t>& indices) const {
  std::vector<Review> picked;
  std::vector<std::string> ids;
  picked.reserve(indices.size());
  ids.reserve(indices.size());
  for (std::size_t idx : indices) {
    if (idx >= size()) throw DimensionError("reviewer index out of range");
    picked.push_back(reviews_[idx]);
    ids.push_back(reviewer_ids_[idx]);
  }
  return ReviewPanel(prior_, std::move(picked), std::move(ids));
}

Matrix ReviewPanel::ScoreMatrix() const {
  Matrix m(size(), rho());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t c = 0; c < rho(); ++c) {
      m(i, c) = static_cast<double>(reviews_[i][c]);
    }
  }
  return m;
}

AgreementParams ComputeAgreementParams(Rule rule, const DirichletPrior& prior) {
  if (!IsBounded(rule)) {
    throw PreconditionError(std::string("agreement rewards need a bounded rule; ") +
                            std::string(RuleName(rule)) + " is unbounded");
  }
  if (!IsSymmetric(rule)) {
    throw PreconditionError(std::string("agreement rewards need a symmetric rule; ") +
                            std::string(RuleName(rule)) + " is not symmetric");
  }
  if (!prior.is_non_informative()) {
    throw PreconditionError(
        "agreement rewards need a non-informative prior (all pseudo-counts "
        "equal)");
  }

  // Every (report, outcome) cell must take one of exactly two values:
  // the diagonal one on agreement, the off-diagonal one otherwise.
  const std::size_t outcomes = prior.size();
  std::optional<double> agree;
  std::optional<double> disagree;
  for (std::size_t r = 0; r < outcomes; ++r) {
    const auto phi = PosteriorPredictive(prior, Review{r});
    for (std::size_t e = 0; e < outcomes; ++e) {
      const double value = BaseScore(rule, phi, Outcome(e));
      auto& slot = r == e ? agree : disagree;
      if (!slot) {
        slot = value;
      } else if (!NearlyEqual(*slot, value)) {
        throw PreconditionError(
            "pairwise scores are not two-valued for this rule and prior");
      }
    }
  }
  if (!(*agree > *disagree) || NearlyEqual(*agree, *disagree)) {
    throw PreconditionError(
        "agreement score does not exceed disagreement score");
  }

  AgreementParams params;
  params.delta_max = *agree;
  params.delta_min = *disagree;
  const double spread = params.delta_max - params.delta_min;
  params.gamma = 1.0 / spread;
  params.lambda = -params.delta_min / spread;
  return params;
}

ScoringRuleSpec AgreementSpec(Rule rule, const DirichletPrior& prior) {
  const auto params = ComputeAgreementParams(rule, prior);
  return ScoringRuleSpec::Normalized(rule, params.delta_min,
                                    params.delta_max - params.delta_min);
}

Outcome Summarize(const Review& review, const Summarizer& summarizer,
                  std::uint64_t stream) {
  switch (summarizer.kind) {
    case Summarizer::Kind::kIdentity:
      if (review.rho() != 1) {
        throw PreconditionError(
            "identity summarizer needs single-score reviews; got " +
            std::to_string(review.rho()) + " scores");
      }
      return Outcome(review[0]);

    case Summarizer::Kind::kMedian: {
      std::vector<std::size_t> sorted(review.scores().begin(),
                                      review.scores().end());
      std::sort(sorted.begin(), sorted.end());
      return Outcome(sorted[(sorted.size() - 1) / 2]);
    }

    case Summarizer::Kind::kMode: {
      const std::size_t top =
          *std::max_element(review.scores().begin(), review.scores().end());
      const auto counts = review.Counts(top);
      const std::size_t best = *std::max_element(counts.begin(), counts.end());
      std::vector<std::size_t> tied;
      for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == best) tied.push_back(k);
      }
      if (tied.size() == 1 || summarizer.tie_break == TieBreak::kLowestScore) {
        return Outcome(tied.front());
      }
      Rng rng = MakeRng(summarizer.seed, stream);
      return Outcome(tied[UniformIndex(rng, tied.size())]);
    }
  }
  throw PreconditionError("unknown summarizer");
}

PairWeights::PairWeights(std::size_t n, double gamma, double lambda)
    : n_(n), gamma_(n, n, gamma), lambda_(n, n, lambda) {
  if (!(gamma > 0.0)) throw DomainError("pair gamma must be positive");
}

void PairWeights::Set(std::size_t i, std::size_t j, double gamma,
                      double lambda) {
  if (i >= n_ || j >= n_) throw DimensionError("pair index out of range");
  if (!(gamma > 0.0) || !std::isfinite(gamma) || !std::isfinite(lambda)) {
    throw DomainError("pair gamma must be positive and finite");
  }
  gamma_(i, j) = gamma;
  lambda_(i, j) = lambda;
}

ScoreReport ReviewScores(const ReviewPanel& panel, const ScoringRuleSpec& spec,
                         const Summarizer& summarizer,
                         const std::optional<PairWeights>& overrides) {
  const std::size_t n = panel.size();
  if (overrides && overrides->size() != n) {
    throw DimensionError("pair weight overrides do not match the panel size");
  }

  ScoreReport report;
  report.outcomes.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    report.outcomes[j] = Summarize(panel.review(j), summarizer, j).index;
  }

  std::vector<ProbabilityVector> predictive;
  predictive.reserve(n);
  for (const auto& r : panel.reviews()) {
    predictive.push_back(PosteriorPredictive(panel.prior(), r));
  }

  report.pairwise = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double base =
          BaseScore(spec.rule(), predictive[i], Outcome(report.outcomes[j]));
      report.pairwise(i, j) =
          overrides ? overrides->gamma(i, j) * base + overrides->lambda(i, j)
                    : spec.Apply(base);
    }
  }

  report.scores.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += report.pairwise(i, j);
    }
    report.scores[i] = sum;
  }
  return report;
}

ScoreReport ReviewScoresPerCriterion(const ReviewPanel& panel,
                                     const ScoringRuleSpec& spec) {
  const std::size_t n = panel.size();
  ScoreReport total;
  total.scores.assign(n, 0.0);
  total.pairwise = Matrix(n, n);
  for (std::size_t c = 0; c < panel.rho(); ++c) {
    const auto part =
        ReviewScores(panel.Criterion(c), spec, Summarizer::Identity());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        total.pairwise(i, j) += part.pairwise(i, j);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum += total.pairwise(i, j);
    }
    total.scores[i] = sum;
  }
  return total;
}

}  // namespace peerscore
