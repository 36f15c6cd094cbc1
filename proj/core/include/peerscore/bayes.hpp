#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "peerscore/probability.hpp"

namespace peerscore {

// Dirichlet prior over the multinomial parameter of the evaluation scores.
// alpha[k] acts as a pseudo-count for score k.
class DirichletPrior {
 public:
  explicit DirichletPrior(std::vector<double> alpha);

  // All pseudo-counts equal to `pseudo_count`, over `outcomes` scores.
  static DirichletPrior NonInformative(std::size_t outcomes,
                                       double pseudo_count = 1.0);

  std::size_t size() const noexcept { return alpha_.size(); }
  std::size_t best_score() const noexcept { return alpha_.size() - 1; }
  std::span<const double> alpha() const noexcept { return alpha_; }
  double operator[](std::size_t k) const { return alpha_[k]; }
  double total() const noexcept { return total_; }

  bool is_non_informative() const noexcept;
  bool has_integer_alpha() const noexcept;

  friend bool operator==(const DirichletPrior& a, const DirichletPrior& b) {
    return a.alpha_ == b.alpha_;
  }

 private:
  std::vector<double> alpha_;
  double total_ = 0.0;
};

// A reported or observed review: rho evaluation scores, one per criterion.
// Range against v is checked where a prior is available.
class Review {
 public:
  explicit Review(std::vector<std::size_t> scores);
  Review(std::initializer_list<std::size_t> scores)
      : Review(std::vector<std::size_t>(scores)) {}

  std::size_t rho() const noexcept { return scores_.size(); }
  std::size_t operator[](std::size_t m) const { return scores_[m]; }
  std::span<const std::size_t> scores() const noexcept { return scores_; }

  // counts[k] = number of entries equal to k, for k in 0..best_score.
  std::vector<std::size_t> Counts(std::size_t best_score) const;

  friend bool operator==(const Review&, const Review&) = default;

 private:
  std::vector<std::size_t> scores_;
};

// Throws DomainError if any score exceeds best_score.
void RequireInRange(const Review& review, std::size_t best_score);

// Dirichlet density at omega. Beta(alpha) is evaluated through log-gamma so
// real pseudo-counts are allowed. Throws DomainError when omega sits on a
// face of the simplex where the density is singular (omega_k == 0 with
// alpha_k < 1).
double Density(const DirichletPrior& prior, const ProbabilityVector& omega);

// E[omega | alpha] = alpha / sum(alpha).
ProbabilityVector ExpectedDistribution(const DirichletPrior& prior);

// Conjugate update: alpha + per-score counts of `review`.
DirichletPrior Posterior(const DirichletPrior& prior, const Review& review);

// Predictive distribution of the next signal after observing `review`:
//   (alpha_k + #{m : score_m == k}) / (rho + sum(alpha)).
// The same function yields the true predictive (applied to the private
// signals) and the center's estimate (applied to the report). With integer
// pseudo-counts every entry is a single correctly rounded division of two
// exact integers.
ProbabilityVector PosteriorPredictive(const DirichletPrior& prior,
                                      const Review& review);

}  // namespace peerscore
