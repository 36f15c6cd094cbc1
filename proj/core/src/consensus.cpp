#include "peerscore/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "peerscore/bayes.hpp"
#include "peerscore/error.hpp"

namespace peerscore {

namespace {

constexpr double kDiagonalSlack = 1e-12;

}  // namespace

WeightMatrix::WeightMatrix(Matrix w) : w_(std::move(w)) {
  if (w_.rows() < 2 || w_.rows() != w_.cols()) {
    throw DimensionError("weight matrix must be square with at least two rows");
  }
  for (std::size_t i = 0; i < w_.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < w_.cols(); ++j) {
      const double x = w_(i, j);
      if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("weight (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") is not strictly inside (0, 1)");
      }
      if (x > w_(i, i) + kDiagonalSlack) {
        throw DomainError("row " + std::to_string(i) +
                          " gives a peer more weight than the reviewer's own");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw DomainError("row " + std::to_string(i) + " sums to " +
                        std::to_string(sum));
    }
  }
}

WeightMatrix ConsensusWeights(const ReviewPanel& panel,
                              const ScoringRuleSpec& spec) {
  const std::size_t n = panel.size();
  std::vector<ProbabilityVector> predictive;
  predictive.reserve(n);
  for (const auto& r : panel.reviews()) {
    predictive.push_back(PosteriorPredictive(panel.prior(), r));
  }

  Matrix expected(n, n);
  double worst = std::numeric_limits<double>::infinity();
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      expected(i, j) = ExpectedScore(spec, predictive[j], predictive[i]);
      if (expected(i, j) < worst) {
        worst = expected(i, j);
        worst_i = i;
        worst_j = j;
      }
    }
  }
  if (!(worst > 0.0)) throw PositivityError(worst_i, worst_j, worst, -worst);

  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += expected(i, j);
    for (std::size_t j = 0; j < n; ++j) w(i, j) = expected(i, j) / total;
  }
  return WeightMatrix(std::move(w));
}

double ColumnSpread(const Matrix& m) {
  double spread = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double lo = m(0, c);
    double hi = m(0, c);
    for (std::size_t r = 1; r < m.rows(); ++r) {
      lo = std::min(lo, m(r, c));
      hi = std::max(hi, m(r, c));
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

ConsensusResult DegrootLimit(const WeightMatrix& w, const Matrix& r0,
                             const ConsensusOptions& options) {
  if (!(options.tolerance > 0.0)) {
    throw PreconditionError("consensus tolerance must be positive");
  }
  if (r0.rows() != w.size()) {
    throw DimensionError("review matrix has " + std::to_string(r0.rows()) +
                         " rows, weight matrix has " + std::to_string(w.size()));
  }

  Matrix power = w.matrix();
  int iterations = 1;
  double residual = ColumnSpread(power);
  while (!(residual < options.tolerance)) {
    if (iterations > options.max_iterations) {
      throw ConvergenceError(iterations - 1, residual);
    }
    power = Multiply(power, power);
    residual = ColumnSpread(power);
    ++iterations;
  }

  auto first_row = power.row(0);
  ProbabilityVector beta = ProbabilityVector::Normalized(
      std::vector<double>(first_row.begin(), first_row.end()));

  std::vector<double> consensual(r0.cols(), 0.0);
  for (std::size_t c = 0; c < r0.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t j = 0; j < r0.rows(); ++j) sum += beta[j] * r0(j, c);
    consensual[c] = sum;
  }

  return ConsensusResult{std::move(consensual), std::move(beta),
                         std::move(power), iterations, residual};
}

std::vector<double> AverageReview(const ReviewPanel& panel) {
  std::vector<double> mean(panel.rho(), 0.0);
  for (const auto& r : panel.reviews()) {
    for (std::size_t c = 0; c < panel.rho(); ++c) {
      mean[c] += static_cast<double>(r[c]);
    }
  }
  for (double& m : mean) m /= static_cast<double>(panel.size());
  return mean;
}

std::vector<std::size_t> RoundToScores(const std::vector<double>& consensual,
                                       std::size_t best_score) {
  std::vector<std::size_t> out(consensual.size());
  for (std::size_t c = 0; c < consensual.size(); ++c) {
    const double clamped =
        std::clamp(consensual[c], 0.0, static_cast<double>(best_score));
    out[c] = static_cast<std::size_t>(std::lround(clamped));
  }
  return out;
}

}  // namespace peerscore
