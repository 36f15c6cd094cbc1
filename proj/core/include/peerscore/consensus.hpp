#pragma once

#include <cstddef>
#include <vector>

#include "peerscore/matrix.hpp"
#include "peerscore/panel.hpp"
#include "peerscore/probability.hpp"
#include "peerscore/rules.hpp"

namespace peerscore {

// Row-stochastic matrix with entries strictly inside (0, 1) whose diagonal
// holds each row's maximum.
class WeightMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-12;

  explicit WeightMatrix(Matrix w);

  std::size_t size() const noexcept { return w_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return w_(i, j); }
  const Matrix& matrix() const noexcept { return w_; }

 private:
  Matrix w_;
};

struct ConsensusOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;  // squarings
};

struct ConsensusResult {
  std::vector<double> consensual;  // beta^T R0, one entry per criterion
  ProbabilityVector beta;          // limiting influence weights
  Matrix limit;                    // W^(2^k) at termination
  int iterations = 0;              // powers W^(2^k) examined, k = 0, 1, ...
  double residual = 0.0;           // largest column spread of `limit`
};

// w_ij proportional to E_{Phi_i}[gamma R(Phi_j, e) + lambda], each Phi the
// predictive estimated from a reviewer's full report. Throws PositivityError
// naming the worst pair and the lambda increase that would repair it.
WeightMatrix ConsensusWeights(const ReviewPanel& panel,
                              const ScoringRuleSpec& spec);

// max over columns of (max row entry - min row entry).
double ColumnSpread(const Matrix& m);

// Repeated squaring of W until every column of the power is flat within
// `tolerance`; the consensual review is any row of the limit applied to R0.
// Throws ConvergenceError after max_iterations squarings.
ConsensusResult DegrootLimit(const WeightMatrix& w, const Matrix& r0,
                             const ConsensusOptions& options = {});

// Column means of the reported scores.
std::vector<double> AverageReview(const ReviewPanel& panel);

// Optional post-step: nearest evaluation score, clamped to [0, v].
std::vector<std::size_t> RoundToScores(const std::vector<double>& consensual,
                                       std::size_t best_score);

}  // namespace peerscore
