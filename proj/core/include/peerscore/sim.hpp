#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "peerscore/bayes.hpp"
#include "peerscore/consensus.hpp"
#include "peerscore/panel.hpp"
#include "peerscore/probability.hpp"
#include "peerscore/random.hpp"
#include "peerscore/rules.hpp"

namespace peerscore::sim {

// Hidden multinomial parameter describing a manuscript's quality.
struct TrueQuality {
  ProbabilityVector omega;
};

struct Honest {};
struct FixedReport {
  std::size_t value = 0;
};
struct PermuteSignals {
  std::vector<std::size_t> permutation;  // signal k is reported as permutation[k]
};
struct RandomReport {
  std::uint64_t seed = 0;
};

using Strategy = std::variant<Honest, FixedReport, PermuteSignals, RandomReport>;

// Throws DomainError when the strategy is not valid for scores 0..best_score.
void ValidateStrategy(const Strategy& strategy, std::size_t best_score);

// What a reviewer following `strategy` reports after observing `signals`.
// `stream` identifies the reviewer/trial for RandomReport draws.
Review ApplyStrategy(const Strategy& strategy, const Review& signals,
                     std::size_t best_score, std::uint64_t stream);

struct SimConfig {
  std::size_t n = 10;
  std::size_t rho = 1;
  DirichletPrior prior = DirichletPrior::NonInformative(5);
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  ScoringRuleSpec spec = ScoringRuleSpec(Rule::kQuadratic);

  std::size_t best_score() const noexcept { return prior.best_score(); }
};

// Throws PreconditionError on inconsistent dimensions.
void ValidateConfig(const SimConfig& config);

struct SampledPanel {
  ReviewPanel reported;
  std::vector<Review> honest;  // private signals, kept for oracle checks
};

// Draws n x rho i.i.d. signals from quality.omega. Reviewer i of trial t uses
// the stream DeriveSeed(seed, t, i), so panels are reproducible and
// independent of evaluation order.
SampledPanel SamplePanel(const SimConfig& config, const TrueQuality& quality,
                         std::uint64_t trial = 0,
                         const Strategy& strategy = Honest{});

enum class ReportForm {
  kFullReview,  // report a vector of rho scores (estimated from rho signals)
  kSummarized,  // report a single score (estimated as a one-signal review)
};

struct ExpectedScoreTable {
  std::vector<std::vector<std::size_t>> reports;
  std::vector<double> expected;

  // Indices of reports within `tolerance` of the best expected score.
  std::vector<std::size_t> Maximizers(double tolerance = 1e-12) const;
};

inline constexpr double kEnumerationLimit = 1e6;

// Exact expected per-pair score E_{Theta}[gamma R(Phi(report), e) + lambda]
// for every possible report, where Theta is the predictive from the true
// signals and the peer outcome e is distributed per Theta. No sampling.
ExpectedScoreTable ExhaustiveExpectedScore(const DirichletPrior& prior,
                                           const ScoringRuleSpec& spec,
                                           const Review& true_signals,
                                           ReportForm form);

struct AccuracyPoint {
  std::size_t n = 0;
  double mean_distance = 0.0;  // total variation, averaged over trials
};

double TotalVariation(const ProbabilityVector& a, const ProbabilityVector& b);

// Empirical distribution of all reported scores of `n` reviewers versus
// quality.omega, for each size in `sizes`.
std::vector<AccuracyPoint> AccuracyConvergence(
    const SimConfig& config, const TrueQuality& quality,
    std::span<const std::size_t> sizes, const Strategy& strategy = Honest{});

struct CriterionError {
  double consensus_mean = 0.0;
  double consensus_sd = 0.0;
  double average_mean = 0.0;
  double average_sd = 0.0;
};

struct BootstrapTable {
  std::size_t resamples = 0;
  std::vector<CriterionError> criteria;
};

// Bootstrap resamples with replacement of the panel's reviewers, comparing
// |consensual - gold| and |average - gold| per criterion. Standard
// deviations use the n - 1 denominator (zero for a single resample).
BootstrapTable BootstrapCompare(const ReviewPanel& panel,
                                const std::vector<std::size_t>& gold,
                                std::size_t resamples, std::uint64_t seed,
                                const ScoringRuleSpec& spec,
                                const ConsensusOptions& options = {});

// Same comparison over caller-chosen resamples (each a list of reviewer
// indices).
BootstrapTable BootstrapCompare(
    const ReviewPanel& panel, const std::vector<std::size_t>& gold,
    const std::vector<std::vector<std::size_t>>& resamples,
    const ScoringRuleSpec& spec, const ConsensusOptions& options = {});

// Per reviewer: sum over criteria of (budget / rho) * agreements / (n - 1).
// Requires a non-informative prior.
std::vector<double> BonusAllocation(const ReviewPanel& panel,
                                    double budget_per_reviewer);

struct StrategyComparison {
  std::size_t trials = 0;
  double mean_first = 0.0;
  double mean_second = 0.0;
};

// Monte-Carlo comparison of the review score earned by reviewer 0 under two
// strategies while every peer reports honestly. Each trial draws omega from
// the prior and a fresh panel of signals; both strategies face the same
// signals.
StrategyComparison CompareStrategies(const SimConfig& config,
                                     const Strategy& first,
                                     const Strategy& second,
                                     const Summarizer& summarizer = {});

struct SyntheticBootstrapSummary {
  std::size_t panels = 0;
  std::size_t resamples_per_panel = 0;
  std::vector<CriterionError> criteria;  // averaged over panels
  std::size_t consensus_better = 0;      // (panel, criterion) cells
  std::size_t average_better = 0;
  std::size_t ties = 0;
};

// Runs BootstrapCompare on config.trials synthetic honest panels, each with
// omega drawn from the prior and gold set to the mode of omega.
SyntheticBootstrapSummary SyntheticBootstrapStudy(
    const SimConfig& config, std::size_t resamples_per_panel);

}  // namespace peerscore::sim
