#include "peerscore/bayes.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "peerscore/error.hpp"

namespace peerscore {

namespace {

// Bound on integer pseudo-counts for the exact path; far below 2^53 so
// every numerator and denominator is exactly representable.
constexpr double kExactAlphaLimit = 1e12;
constexpr std::size_t kExactRhoLimit = 64;

}  // namespace

DirichletPrior::DirichletPrior(std::vector<double> alpha)
    : alpha_(std::move(alpha)) {
  if (alpha_.size() < 2) {
    throw DimensionError("Dirichlet prior needs at least two pseudo-counts");
  }
  for (std::size_t k = 0; k < alpha_.size(); ++k) {
    if (!(alpha_[k] > 0.0) || !std::isfinite(alpha_[k])) {
      throw DomainError("pseudo-count alpha[" + std::to_string(k) +
                        "] must be positive and finite");
    }
    total_ += alpha_[k];
  }
}

DirichletPrior DirichletPrior::NonInformative(std::size_t outcomes,
                                              double pseudo_count) {
  return DirichletPrior(std::vector<double>(outcomes, pseudo_count));
}

bool DirichletPrior::is_non_informative() const noexcept {
  for (double a : alpha_) {
    if (a != alpha_.front()) return false;
  }
  return true;
}

bool DirichletPrior::has_integer_alpha() const noexcept {
  for (double a : alpha_) {
    if (a != std::floor(a) || a > kExactAlphaLimit) return false;
  }
  return true;
}

Review::Review(std::vector<std::size_t> scores) : scores_(std::move(scores)) {
  if (scores_.empty()) throw DimensionError("a review needs at least one score");
}

std::vector<std::size_t> Review::Counts(std::size_t best_score) const {
  RequireInRange(*this, best_score);
  std::vector<std::size_t> counts(best_score + 1, 0);
  for (std::size_t s : scores_) ++counts[s];
  return counts;
}

void RequireInRange(const Review& review, std::size_t best_score) {
  for (std::size_t m = 0; m < review.rho(); ++m) {
    if (review[m] > best_score) {
      throw DomainError("score " + std::to_string(review[m]) + " at criterion " +
                        std::to_string(m + 1) + " exceeds the best score " +
                        std::to_string(best_score));
    }
  }
}

double Density(const DirichletPrior& prior, const ProbabilityVector& omega) {
  if (omega.size() != prior.size()) {
    throw DimensionError("density point has " + std::to_string(omega.size()) +
                         " entries, prior has " + std::to_string(prior.size()));
  }
  double log_beta = -std::lgamma(prior.total());
  for (std::size_t k = 0; k < prior.size(); ++k) {
    log_beta += std::lgamma(prior[k]);
  }
  double log_kernel = 0.0;
  for (std::size_t k = 0; k < prior.size(); ++k) {
    const double exponent = prior[k] - 1.0;
    if (omega[k] == 0.0) {
      if (exponent < 0.0) {
        throw DomainError("Dirichlet density is singular at omega[" +
                          std::to_string(k) + "] = 0 with alpha < 1");
      }
      if (exponent > 0.0) return 0.0;
      continue;
    }
    log_kernel += exponent * std::log(omega[k]);
  }
  return std::exp(log_kernel - log_beta);
}

ProbabilityVector ExpectedDistribution(const DirichletPrior& prior) {
  std::vector<double> mean(prior.alpha().begin(), prior.alpha().end());
  for (double& m : mean) m /= prior.total();
  return ProbabilityVector(std::move(mean));
}

DirichletPrior Posterior(const DirichletPrior& prior, const Review& review) {
  const auto counts = review.Counts(prior.best_score());
  std::vector<double> alpha(prior.alpha().begin(), prior.alpha().end());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    alpha[k] += static_cast<double>(counts[k]);
  }
  return DirichletPrior(std::move(alpha));
}

ProbabilityVector PosteriorPredictive(const DirichletPrior& prior,
                                      const Review& review) {
  const auto counts = review.Counts(prior.best_score());
  std::vector<double> probs(prior.size());

  if (prior.has_integer_alpha() && review.rho() <= kExactRhoLimit) {
    std::int64_t denominator = static_cast<std::int64_t>(review.rho());
    for (double a : prior.alpha()) denominator += static_cast<std::int64_t>(a);
    const auto denom = static_cast<double>(denominator);
    for (std::size_t k = 0; k < probs.size(); ++k) {
      const std::int64_t numerator = static_cast<std::int64_t>(prior[k]) +
                                     static_cast<std::int64_t>(counts[k]);
      probs[k] = static_cast<double>(numerator) / denom;
    }
  } else {
    const double denom = static_cast<double>(review.rho()) + prior.total();
    for (std::size_t k = 0; k < probs.size(); ++k) {
      probs[k] = (prior[k] + static_cast<double>(counts[k])) / denom;
    }
  }
  return ProbabilityVector(std::move(probs));
}

}  // namespace peerscore
