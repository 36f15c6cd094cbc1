#include "peerscore/probability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peerscore/error.hpp"

namespace peerscore {

namespace {

void Validate(const std::vector<double>& probs) {
  if (probs.size() < 2) {
    throw DimensionError("probability vector needs at least two outcomes, got " +
                         std::to_string(probs.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!std::isfinite(probs[k]) || probs[k] < 0.0) {
      throw DomainError("probability entry " + std::to_string(k) +
                        " is negative or not finite");
    }
    sum += probs[k];
  }
  if (std::abs(sum - 1.0) > ProbabilityVector::kSumTolerance) {
    throw DomainError("probability entries sum to " + std::to_string(sum) +
                      ", not 1");
  }
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs)
    : probs_(std::move(probs)) {
  Validate(probs_);
  std::vector<double> sorted = probs_;
  std::sort(sorted.begin(), sorted.end());
  for (double p : sorted) squared_norm_ += p * p;
}

ProbabilityVector ProbabilityVector::Normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError("cannot normalize negative or non-finite weights");
    }
    sum += w;
  }
  if (sum <= 0.0) throw DomainError("cannot normalize all-zero weights");
  for (double& w : weights) w /= sum;
  return ProbabilityVector(std::move(weights));
}

ProbabilityVector ProbabilityVector::Uniform(std::size_t outcomes) {
  if (outcomes < 2) {
    throw DimensionError("probability vector needs at least two outcomes");
  }
  return ProbabilityVector(
      std::vector<double>(outcomes, 1.0 / static_cast<double>(outcomes)));
}

ProbabilityVector ProbabilityVector::PointMass(std::size_t outcomes,
                                               Outcome at) {
  if (at.index >= outcomes) {
    throw DimensionError("point mass outcome out of range");
  }
  std::vector<double> probs(outcomes, 0.0);
  probs[at.index] = 1.0;
  return ProbabilityVector(std::move(probs));
}

std::vector<double> ProbabilityVector::Cumulative() const {
  std::vector<double> out(probs_.size());
  double running = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    running += probs_[k];
    out[k] = running;
  }
  // Pin the top of the CDF so rounding never leaves a phantom penalty.
  out.back() = 1.0;
  return out;
}

void RequireSameSize(const ProbabilityVector& a, const ProbabilityVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("probability vectors have " + std::to_string(a.size()) +
                         " and " + std::to_string(b.size()) + " outcomes");
  }
}

}  // namespace peerscore
