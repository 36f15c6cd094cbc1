#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace peerscore {

// Index of an evaluation score in {0, ..., v}.
struct Outcome {
  std::size_t index = 0;

  constexpr explicit Outcome(std::size_t i) : index(i) {}
  friend constexpr bool operator==(Outcome, Outcome) = default;
};

// A discrete distribution over the ordered outcomes 0..v.
//
// Construction validates the entries (non-negative, at least two of them,
// summing to one within kSumTolerance). Nothing is renormalized unless the
// caller asks for it through Normalized().
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbabilityVector(std::vector<double> probs);

  // Scales non-negative weights to sum to one.
  static ProbabilityVector Normalized(std::vector<double> weights);
  static ProbabilityVector Uniform(std::size_t outcomes);
  static ProbabilityVector PointMass(std::size_t outcomes, Outcome at);

  std::size_t size() const noexcept { return probs_.size(); }
  std::size_t best_score() const noexcept { return probs_.size() - 1; }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> values() const noexcept { return probs_; }

  // Z_k = sum_{j <= k} z_j; the last entry is exactly 1.
  std::vector<double> Cumulative() const;

  // Sum of squared entries, accumulated in ascending order so that any
  // permutation of the entries yields the bitwise-identical value.
  double SquaredNorm() const noexcept { return squared_norm_; }

  friend bool operator==(const ProbabilityVector& a,
                         const ProbabilityVector& b) {
    return a.probs_ == b.probs_;
  }

 private:
  std::vector<double> probs_;
  double squared_norm_ = 0.0;
};

// Throws DimensionError unless both vectors cover the same outcomes.
void RequireSameSize(const ProbabilityVector& a, const ProbabilityVector& b);

}  // namespace peerscore
