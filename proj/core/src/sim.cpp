#include "peerscore/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peerscore/error.hpp"

namespace peerscore::sim {

namespace {

// Stream ids kept apart from reviewer indices.
constexpr std::uint64_t kOmegaStream = 0xfeedf00dULL;
constexpr std::uint64_t kReportStream = 0x5eed5eedULL;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Review> SampleSignals(const TrueQuality& quality, std::size_t n,
                                  std::size_t rho, std::uint64_t seed,
                                  std::uint64_t trial) {
  std::vector<Review> signals;
  signals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = MakeRng(seed, trial, i);
    std::vector<std::size_t> draws(rho);
    for (auto& d : draws) d = SampleCategorical(rng, quality.omega);
    signals.emplace_back(std::move(draws));
  }
  return signals;
}

void MeanAndSd(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  sd = 0.0;
  if (xs.size() < 2) return;
  for (double x : xs) sd += (x - mean) * (x - mean);
  sd = std::sqrt(sd / static_cast<double>(xs.size() - 1));
}

void RequireGold(const ReviewPanel& panel, const std::vector<std::size_t>& gold) {
  if (gold.size() != panel.rho()) {
    throw DimensionError("gold review has " + std::to_string(gold.size()) +
                         " scores, panel has " + std::to_string(panel.rho()) +
                         " criteria");
  }
  RequireInRange(Review(gold), panel.best_score());
}

}  // namespace

void ValidateStrategy(const Strategy& strategy, std::size_t best_score) {
  std::visit(
      Overloaded{
          [](const Honest&) {},
          [&](const FixedReport& s) {
            if (s.value > best_score) {
              throw DomainError("fixed report " + std::to_string(s.value) +
                                " exceeds the best score");
            }
          },
          [&](const PermuteSignals& s) {
            if (s.permutation.size() != best_score + 1) {
              throw DomainError("permutation must cover every score");
            }
            std::vector<bool> seen(best_score + 1, false);
            for (std::size_t target : s.permutation) {
              if (target > best_score || seen[target]) {
                throw DomainError("signal permutation is not a bijection");
              }
              seen[target] = true;
            }
          },
          [](const RandomReport&) {},
      },
      strategy);
}

Review ApplyStrategy(const Strategy& strategy, const Review& signals,
                     std::size_t best_score, std::uint64_t stream) {
  ValidateStrategy(strategy, best_score);
  RequireInRange(signals, best_score);
  std::vector<std::size_t> out(signals.scores().begin(), signals.scores().end());
  std::visit(Overloaded{
                 [](const Honest&) {},
                 [&](const FixedReport& s) {
                   std::fill(out.begin(), out.end(), s.value);
                 },
                 [&](const PermuteSignals& s) {
                   for (auto& x : out) x = s.permutation[x];
                 },
                 [&](const RandomReport& s) {
                   Rng rng = MakeRng(s.seed, kReportStream, stream);
                   for (auto& x : out) x = UniformIndex(rng, best_score + 1);
                 },
             },
             strategy);
  return Review(std::move(out));
}

void ValidateConfig(const SimConfig& config) {
  if (config.n < 2) throw PreconditionError("simulation needs n >= 2");
  if (config.rho < 1) throw PreconditionError("simulation needs rho >= 1");
  if (config.trials < 1) throw PreconditionError("simulation needs trials >= 1");
}

SampledPanel SamplePanel(const SimConfig& config, const TrueQuality& quality,
                         std::uint64_t trial, const Strategy& strategy) {
  ValidateConfig(config);
  if (quality.omega.size() != config.prior.size()) {
    throw DimensionError("quality and prior cover different score ranges");
  }
  auto honest =
      SampleSignals(quality, config.n, config.rho, config.seed, trial);
  std::vector<Review> reported;
  reported.reserve(honest.size());
  for (std::size_t i = 0; i < honest.size(); ++i) {
    reported.push_back(ApplyStrategy(strategy, honest[i], config.best_score(),
                                     DeriveSeed(trial, i)));
  }
  return SampledPanel{ReviewPanel(config.prior, std::move(reported)),
                      std::move(honest)};
}

std::vector<std::size_t> ExpectedScoreTable::Maximizers(double tolerance) const {
  const double best = *std::max_element(expected.begin(), expected.end());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (expected[k] >= best - tolerance) out.push_back(k);
  }
  return out;
}

ExpectedScoreTable ExhaustiveExpectedScore(const DirichletPrior& prior,
                                           const ScoringRuleSpec& spec,
                                           const Review& true_signals,
                                           ReportForm form) {
  const std::size_t outcomes = prior.size();
  const auto theta = PosteriorPredictive(prior, true_signals);
  ExpectedScoreTable table;

  if (form == ReportForm::kSummarized) {
    for (std::size_t r = 0; r < outcomes; ++r) {
      const auto phi = PosteriorPredictive(prior, Review{r});
      table.reports.push_back({r});
      table.expected.push_back(ExpectedScore(spec, phi, theta));
    }
    return table;
  }

  const std::size_t rho = true_signals.rho();
  const double count =
      std::pow(static_cast<double>(outcomes), static_cast<double>(rho));
  if (count > kEnumerationLimit) throw EnumerationLimitError(count, kEnumerationLimit);

  // Odometer over {0..v}^rho in lexicographic order.
  std::vector<std::size_t> report(rho, 0);
  while (true) {
    const auto phi = PosteriorPredictive(prior, Review(report));
    table.reports.push_back(report);
    table.expected.push_back(ExpectedScore(spec, phi, theta));
    std::size_t pos = rho;
    while (pos > 0) {
      --pos;
      if (++report[pos] < outcomes) break;
      report[pos] = 0;
      if (pos == 0) return table;
    }
  }
}

double TotalVariation(const ProbabilityVector& a, const ProbabilityVector& b) {
  RequireSameSize(a, b);
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) total += std::abs(a[k] - b[k]);
  return 0.5 * total;
}

std::vector<AccuracyPoint> AccuracyConvergence(
    const SimConfig& config, const TrueQuality& quality,
    std::span<const std::size_t> sizes, const Strategy& strategy) {
  if (config.trials < 1) throw PreconditionError("simulation needs trials >= 1");
  const std::size_t v = config.best_score();
  if (quality.omega.size() != v + 1) {
    throw DimensionError("quality and prior cover different score ranges");
  }
  std::vector<AccuracyPoint> series;
  for (std::size_t n : sizes) {
    if (n == 0) throw PreconditionError("accuracy sizes must be positive");
    double total = 0.0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      const auto signals =
          SampleSignals(quality, n, config.rho, config.seed, t);
      std::vector<double> tally(v + 1, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto reported =
            ApplyStrategy(strategy, signals[i], v, DeriveSeed(t, i));
        for (std::size_t s : reported.scores()) tally[s] += 1.0;
      }
      total += TotalVariation(ProbabilityVector::Normalized(std::move(tally)),
                              quality.omega);
    }
    series.push_back({n, total / static_cast<double>(config.trials)});
  }
  return series;
}

BootstrapTable BootstrapCompare(
    const ReviewPanel& panel, const std::vector<std::size_t>& gold,
    const std::vector<std::vector<std::size_t>>& resamples,
    const ScoringRuleSpec& spec, const ConsensusOptions& options) {
  RequireGold(panel, gold);
  if (resamples.empty()) throw PreconditionError("bootstrap needs resamples >= 1");

  const std::size_t rho = panel.rho();
  std::vector<std::vector<double>> consensus_err(rho);
  std::vector<std::vector<double>> average_err(rho);
  for (const auto& indices : resamples) {
    const auto sub = panel.Select(indices);
    const auto weights = ConsensusWeights(sub, spec);
    const auto limit = DegrootLimit(weights, sub.ScoreMatrix(), options);
    const auto average = AverageReview(sub);
    for (std::size_t c = 0; c < rho; ++c) {
      const auto g = static_cast<double>(gold[c]);
      consensus_err[c].push_back(std::abs(limit.consensual[c] - g));
      average_err[c].push_back(std::abs(average[c] - g));
    }
  }

  BootstrapTable table;
  table.resamples = resamples.size();
  table.criteria.resize(rho);
  for (std::size_t c = 0; c < rho; ++c) {
    auto& row = table.criteria[c];
    MeanAndSd(consensus_err[c], row.consensus_mean, row.consensus_sd);
    MeanAndSd(average_err[c], row.average_mean, row.average_sd);
  }
  return table;
}

BootstrapTable BootstrapCompare(const ReviewPanel& panel,
                                const std::vector<std::size_t>& gold,
                                std::size_t resamples, std::uint64_t seed,
                                const ScoringRuleSpec& spec,
                                const ConsensusOptions& options) {
  if (resamples == 0) throw PreconditionError("bootstrap needs resamples >= 1");
  std::vector<std::vector<std::size_t>> draws(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    Rng rng = MakeRng(seed, r);
    draws[r].resize(panel.size());
    for (auto& idx : draws[r]) idx = UniformIndex(rng, panel.size());
  }
  return BootstrapCompare(panel, gold, draws, spec, options);
}

std::vector<double> BonusAllocation(const ReviewPanel& panel,
                                    double budget_per_reviewer) {
  if (!panel.prior().is_non_informative()) {
    throw PreconditionError(
        "bonus allocation counts agreements and needs a non-informative prior");
  }
  const std::size_t n = panel.size();
  const std::size_t rho = panel.rho();
  const double per_criterion = budget_per_reviewer / static_cast<double>(rho);
  std::vector<double> bonus(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < rho; ++c) {
      std::size_t agreements = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && panel.review(j)[c] == panel.review(i)[c]) ++agreements;
      }
      bonus[i] += per_criterion * static_cast<double>(agreements) /
                  static_cast<double>(n - 1);
    }
  }
  return bonus;
}

StrategyComparison CompareStrategies(const SimConfig& config,
                                     const Strategy& first,
                                     const Strategy& second,
                                     const Summarizer& summarizer) {
  ValidateConfig(config);
  const std::size_t v = config.best_score();
  ValidateStrategy(first, v);
  ValidateStrategy(second, v);

  double total_first = 0.0;
  double total_second = 0.0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng omega_rng = MakeRng(config.seed, kOmegaStream, t);
    const TrueQuality quality{SampleDirichlet(omega_rng, config.prior.alpha())};
    auto signals = SampleSignals(quality, config.n, config.rho, config.seed, t);

    auto score_with = [&](const Strategy& strategy) {
      std::vector<Review> reported = signals;
      reported[0] = ApplyStrategy(strategy, signals[0], v, DeriveSeed(t, 0));
      const ReviewPanel panel(config.prior, std::move(reported));
      return ReviewScores(panel, config.spec, summarizer).scores[0];
    };
    total_first += score_with(first);
    total_second += score_with(second);
  }
  const auto trials = static_cast<double>(config.trials);
  return {config.trials, total_first / trials, total_second / trials};
}

SyntheticBootstrapSummary SyntheticBootstrapStudy(
    const SimConfig& config, std::size_t resamples_per_panel) {
  ValidateConfig(config);
  SyntheticBootstrapSummary summary;
  summary.panels = config.trials;
  summary.resamples_per_panel = resamples_per_panel;
  summary.criteria.assign(config.rho, CriterionError{});

  for (std::size_t p = 0; p < config.trials; ++p) {
    Rng omega_rng = MakeRng(config.seed, kOmegaStream, p);
    const TrueQuality quality{SampleDirichlet(omega_rng, config.prior.alpha())};
    const auto values = quality.omega.values();
    const auto mode = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
    const std::vector<std::size_t> gold(config.rho, mode);

    const auto sampled = SamplePanel(config, quality, p);
    const auto table =
        BootstrapCompare(sampled.reported, gold, resamples_per_panel,
                         DeriveSeed(config.seed, p), config.spec);
    for (std::size_t c = 0; c < config.rho; ++c) {
      const auto& row = table.criteria[c];
      auto& acc = summary.criteria[c];
      acc.consensus_mean += row.consensus_mean;
      acc.consensus_sd += row.consensus_sd;
      acc.average_mean += row.average_mean;
      acc.average_sd += row.average_sd;
      if (row.consensus_mean < row.average_mean) {
        ++summary.consensus_better;
      } else if (row.average_mean < row.consensus_mean) {
        ++summary.average_better;
      } else {
        ++summary.ties;
      }
    }
  }
  const auto panels = static_cast<double>(config.trials);
  for (auto& acc : summary.criteria) {
    acc.consensus_mean /= panels;
    acc.consensus_sd /= panels;
    acc.average_mean /= panels;
    acc.average_sd /= panels;
  }
  return summary;
}

}  // namespace peerscore::sim
