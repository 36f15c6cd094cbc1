#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peerscore/bayes.hpp"
#include "peerscore/matrix.hpp"
#include "peerscore/probability.hpp"
#include "peerscore/rules.hpp"

namespace peerscore {

// The reviews reported for one manuscript, with the common prior.
//
// Invariants: at least two reviewers, every review has the same number of
// criteria, every score is at most v = prior.size() - 1.
class ReviewPanel {
 public:
  ReviewPanel(DirichletPrior prior, std::vector<Review> reviews,
              std::vector<std::string> reviewer_ids = {});

  const DirichletPrior& prior() const noexcept { return prior_; }
  std::size_t best_score() const noexcept { return prior_.best_score(); }
  std::size_t size() const noexcept { return reviews_.size(); }
  std::size_t rho() const noexcept { return reviews_.front().rho(); }

  const std::vector<Review>& reviews() const noexcept { return reviews_; }
  const Review& review(std::size_t i) const { return reviews_[i]; }
  const std::vector<std::string>& reviewer_ids() const noexcept {
    return reviewer_ids_;
  }

  // Panel restricted to one criterion (rho == 1).
  ReviewPanel Criterion(std::size_t c) const;
  // Panel built from the given reviewers, repeats allowed.
  ReviewPanel Select(const std::vector<std::size_t>& indices) const;

  // n x rho matrix of the reported scores.
  Matrix ScoreMatrix() const;

  friend bool operator==(const ReviewPanel&, const ReviewPanel&) = default;

 private:
  DirichletPrior prior_;
  std::vector<Review> reviews_;
  std::vector<std::string> reviewer_ids_;
};

// Affine map that turns the two attainable pairwise values of a symmetric
// bounded rule under a non-informative prior into exactly 1 (agreement) and
// 0 (disagreement).
struct AgreementParams {
  double delta_max = 0.0;
  double delta_min = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
};

// Computes delta_max / delta_min by evaluating the rule on every
// single-signal predictive and every outcome, and checks that exactly two
// distinct values occur. Throws PreconditionError for an informative prior,
// for an unbounded or non-symmetric rule, or when the two-value property
// fails numerically.
AgreementParams ComputeAgreementParams(Rule rule, const DirichletPrior& prior);

ScoringRuleSpec AgreementSpec(Rule rule, const DirichletPrior& prior);

enum class TieBreak {
  kSeededRandom,
  kLowestScore,
};

// How a multi-score review is collapsed into one observed outcome.
struct Summarizer {
  enum class Kind { kMode, kMedian, kIdentity };

  Kind kind = Kind::kIdentity;
  TieBreak tie_break = TieBreak::kSeededRandom;
  std::uint64_t seed = 0;

  static Summarizer Identity() { return {}; }
  static Summarizer Mode(TieBreak tie_break = TieBreak::kSeededRandom,
                         std::uint64_t seed = 0) {
    return {Kind::kMode, tie_break, seed};
  }
  static Summarizer Median() { return {Kind::kMedian, TieBreak::kLowestScore, 0}; }
};

// Mode: most frequent score, ties broken per tie_break (seeded draws use
// the stream `stream`, normally the reviewer index). Median: lower median.
// Identity: the single score; PreconditionError when rho > 1.
Outcome Summarize(const Review& review, const Summarizer& summarizer,
                  std::uint64_t stream = 0);

// Per-pair (gamma, lambda) overrides, e.g. to value agreement with a
// reviewer known to be reliable. Built from the panel size alone, before
// any report is seen.
class PairWeights {
 public:
  explicit PairWeights(std::size_t n, double gamma = 1.0, double lambda = 0.0);

  std::size_t size() const noexcept { return n_; }
  void Set(std::size_t i, std::size_t j, double gamma, double lambda);
  double gamma(std::size_t i, std::size_t j) const { return gamma_(i, j); }
  double lambda(std::size_t i, std::size_t j) const { return lambda_(i, j); }

 private:
  std::size_t n_;
  Matrix gamma_;
  Matrix lambda_;
};

struct ScoreReport {
  std::vector<double> scores;         // s_i
  Matrix pairwise;                    // n x n, diagonal zero
  std::vector<std::size_t> outcomes;  // summarized report used as reality
};

// s_i = sum_{j != i} gamma_ij * R(Phi_i, G(r_j)) + lambda_ij, where Phi_i is
// the predictive estimated from reviewer i's full report and G is the
// summarizer. Each cell is written independently and rows are summed left
// to right.
ScoreReport ReviewScores(const ReviewPanel& panel, const ScoringRuleSpec& spec,
                         const Summarizer& summarizer,
                         const std::optional<PairWeights>& overrides = {});

// Independent-criteria variant: score each criterion as its own rho == 1
// panel and add the results. Only meaningful when the criteria are
// independent signals.
ScoreReport ReviewScoresPerCriterion(const ReviewPanel& panel,
                                     const ScoringRuleSpec& spec);

}  // namespace peerscore
