#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "peerscore/bayes.hpp"
#include "peerscore/error.hpp"
#include "peerscore/random.hpp"
#include "support/oracles.hpp"

namespace peerscore {
namespace {

constexpr double kTol = 1e-9;

std::vector<double> Values(const ProbabilityVector& p) {
  return {p.values().begin(), p.values().end()};
}

std::vector<double> AsDoubles(const std::vector<std::int64_t>& a) {
  return {a.begin(), a.end()};
}

TEST(DirichletPriorTest, Validation) {
  EXPECT_THROW(DirichletPrior({1.0}), Error);
  EXPECT_THROW(DirichletPrior({1.0, 0.0}), Error);
  EXPECT_THROW(DirichletPrior({1.0, -1.0}), Error);
  EXPECT_THROW(DirichletPrior({1.0, INFINITY}), Error);
  const auto flat = DirichletPrior::NonInformative(4, 2.5);
  EXPECT_EQ(flat.size(), 4u);
  EXPECT_TRUE(flat.is_non_informative());
  EXPECT_EQ(flat.total(), 10.0);
  EXPECT_FALSE(DirichletPrior({2, 1, 1}).is_non_informative());
  EXPECT_TRUE(DirichletPrior({2, 1, 1}).has_integer_alpha());
  EXPECT_FALSE(DirichletPrior({0.5, 1}).has_integer_alpha());
}

TEST(ReviewTest, NeedsAtLeastOneScore) {
  EXPECT_THROW(Review(std::vector<std::size_t>{}), Error);
  const Review r{0, 2, 2};
  EXPECT_EQ(r.rho(), 3u);
  EXPECT_EQ(r.Counts(3), (std::vector<std::size_t>{1, 0, 2, 0}));
  EXPECT_THROW(RequireInRange(Review{5}, 4), DomainError);
}

TEST(Density, UniformOnTwoSimplex) {
  const auto prior = DirichletPrior::NonInformative(3);
  for (const auto& omega : {ProbabilityVector({0.2, 0.3, 0.5}),
                            ProbabilityVector({0.9, 0.05, 0.05})}) {
    EXPECT_NEAR(Density(prior, omega), 2.0, kTol);
  }
}

TEST(Density, MatchesFactorialForm) {
  const ProbabilityVector centre = ProbabilityVector::Uniform(3);
  EXPECT_NEAR(testing::IntegerDirichletDensity({2, 1, 1}, Values(centre)), 2.0,
              1e-12);
  EXPECT_NEAR(Density(DirichletPrior({2, 1, 1}), centre), 2.0, kTol);
  EXPECT_NEAR(testing::IntegerDirichletDensity({2, 2, 2}, Values(centre)),
              120.0 / 27.0, 1e-12);
  EXPECT_NEAR(Density(DirichletPrior({2, 2, 2}), centre), 4.4444, 5e-5);

  Rng rng = MakeRng(5, 0);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::int64_t> alpha(2 + UniformIndex(rng, 4));
    for (auto& a : alpha) a = 1 + static_cast<std::int64_t>(UniformIndex(rng, 5));
    const auto omega = SampleDirichlet(rng, AsDoubles(alpha));
    const double oracle = testing::IntegerDirichletDensity(alpha, Values(omega));
    EXPECT_NEAR(Density(DirichletPrior(AsDoubles(alpha)), omega), oracle,
                1e-9 * std::max(1.0, oracle));
  }
}

TEST(Density, BoundarySingularity) {
  const DirichletPrior prior({0.5, 2.0});
  EXPECT_THROW(Density(prior, ProbabilityVector({0.0, 1.0})), DomainError);
  EXPECT_EQ(Density(DirichletPrior({2.0, 2.0}), ProbabilityVector({0.0, 1.0})),
            0.0);
  EXPECT_THROW(Density(prior, ProbabilityVector::Uniform(3)), DimensionError);
}

// Property: the v = 1 density integrates to one (midpoint rule).
TEST(Density, IntegratesToOneForTwoOutcomes) {
  for (const auto& alpha : std::vector<std::vector<double>>{
           {1, 1}, {2, 1}, {3, 5}, {1.5, 2.5}, {7, 2}}) {
    const DirichletPrior prior(alpha);
    const int steps = 200000;
    double integral = 0.0;
    for (int s = 0; s < steps; ++s) {
      const double x = (s + 0.5) / steps;
      integral += Density(prior, ProbabilityVector({x, 1.0 - x}));
    }
    EXPECT_NEAR(integral / steps, 1.0, 1e-6);
  }
}

TEST(ExpectedDistribution, Ratios) {
  EXPECT_EQ(Values(ExpectedDistribution(DirichletPrior::NonInformative(5))),
            (std::vector<double>{0.2, 0.2, 0.2, 0.2, 0.2}));
  EXPECT_EQ(Values(ExpectedDistribution(DirichletPrior({2, 1, 1}))),
            (std::vector<double>{0.5, 0.25, 0.25}));
  EXPECT_EQ(Values(ExpectedDistribution(DirichletPrior({3, 1}))),
            (std::vector<double>{0.75, 0.25}));
}

TEST(PosteriorPredictiveTest, PrintedExamples) {
  const auto prior = DirichletPrior::NonInformative(5);
  EXPECT_EQ(Values(PosteriorPredictive(prior, Review{0})),
            testing::ToDoubles(testing::PredictiveOracle({1, 1, 1, 1, 1}, {0})));
  EXPECT_EQ(Values(PosteriorPredictive(prior, Review{0, 1, 3})),
            (std::vector<double>{2.0 / 8, 2.0 / 8, 1.0 / 8, 2.0 / 8, 1.0 / 8}));
  EXPECT_EQ(Values(PosteriorPredictive(prior, Review{4, 4, 4})),
            (std::vector<double>{1.0 / 8, 1.0 / 8, 1.0 / 8, 1.0 / 8, 4.0 / 8}));
  EXPECT_EQ(PosteriorPredictive(prior, Review{1, 2, 3}),
            PosteriorPredictive(prior, Review{3, 1, 2}));
  EXPECT_THROW(PosteriorPredictive(prior, Review{5}), DomainError);
}

TEST(PosteriorPredictiveTest, ExactAgainstRationalOracle) {
  Rng rng = MakeRng(17, 0);
  for (int i = 0; i < 300; ++i) {
    const std::size_t outcomes = 2 + UniformIndex(rng, 5);
    std::vector<std::int64_t> alpha(outcomes);
    for (auto& a : alpha) a = 1 + static_cast<std::int64_t>(UniformIndex(rng, 6));
    std::vector<std::size_t> signals(1 + UniformIndex(rng, 64));
    for (auto& s : signals) s = UniformIndex(rng, outcomes);
    EXPECT_EQ(
        Values(PosteriorPredictive(DirichletPrior(AsDoubles(alpha)), Review(signals))),
        testing::ToDoubles(testing::PredictiveOracle(alpha, signals)));
  }
}

// Property: (rho + sum alpha) * predictive_k - alpha_k is the count of k.
TEST(PosteriorPredictiveTest, EntryCountIdentity) {
  Rng rng = MakeRng(23, 0);
  for (int i = 0; i < 300; ++i) {
    const std::size_t outcomes = 2 + UniformIndex(rng, 6);
    std::vector<double> alpha(outcomes);
    for (auto& a : alpha) a = 0.25 + 4.0 * Uniform01(rng);
    std::vector<std::size_t> signals(1 + UniformIndex(rng, 100));
    for (auto& s : signals) s = UniformIndex(rng, outcomes);
    const DirichletPrior prior(alpha);
    const Review review(signals);
    const auto pred = PosteriorPredictive(prior, review);
    const auto counts = review.Counts(prior.best_score());
    double total = prior.total() + static_cast<double>(signals.size());
    for (std::size_t k = 0; k < outcomes; ++k) {
      EXPECT_NEAR(total * pred[k] - alpha[k], static_cast<double>(counts[k]),
                  1e-12 * total);
    }
  }
}

// Property: updating on a then b equals updating on the concatenation.
TEST(PosteriorPredictiveTest, ConjugacyConsistency) {
  Rng rng = MakeRng(29, 0);
  for (int i = 0; i < 300; ++i) {
    const std::size_t outcomes = 2 + UniformIndex(rng, 5);
    std::vector<double> alpha(outcomes);
    for (auto& a : alpha) a = static_cast<double>(1 + UniformIndex(rng, 4));
    std::vector<std::size_t> a(1 + UniformIndex(rng, 10));
    std::vector<std::size_t> b(1 + UniformIndex(rng, 10));
    for (auto& s : a) s = UniformIndex(rng, outcomes);
    for (auto& s : b) s = UniformIndex(rng, outcomes);
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    const DirichletPrior prior(alpha);
    const auto stepwise = PosteriorPredictive(Posterior(prior, Review(a)), Review(b));
    const auto joint = PosteriorPredictive(prior, Review(both));
    for (std::size_t k = 0; k < outcomes; ++k) {
      EXPECT_NEAR(stepwise[k], joint[k], 1e-12);
    }
  }
}

// Property: the output is always a valid distribution and order-free.
TEST(PosteriorPredictiveTest, ValidAndPermutationInvariant) {
  Rng rng = MakeRng(31, 0);
  for (int i = 0; i < 300; ++i) {
    const std::size_t outcomes = 2 + UniformIndex(rng, 5);
    std::vector<double> alpha(outcomes);
    for (auto& a : alpha) a = 0.1 + 3.0 * Uniform01(rng);
    std::vector<std::size_t> signals(1 + UniformIndex(rng, 8));
    for (auto& s : signals) s = UniformIndex(rng, outcomes);
    const DirichletPrior prior(alpha);
    const auto pred = PosteriorPredictive(prior, Review(signals));
    double sum = 0.0;
    for (double p : pred.values()) {
      EXPECT_GT(p, 0.0);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    std::shuffle(signals.begin(), signals.end(), rng);
    const auto again = PosteriorPredictive(prior, Review(signals));
    for (std::size_t k = 0; k < outcomes; ++k) EXPECT_NEAR(pred[k], again[k], 1e-15);
  }
}

}  // namespace
}  // namespace peerscore
