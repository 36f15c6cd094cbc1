// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "peerscore/consensus.hpp"
#include "peerscore/error.hpp"
#include "peerscore/panel.hpp"
#include "peerscore/sim.hpp"
#include "support/grid.hpp"
#include "support/panels.hpp"
#include "support/propositions.hpp"

namespace {

using namespace peerscore;

struct Verdict {
  bool ok = true;
  std::string detail;

  void Require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool Near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string Fmt(const char* format, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

// Agreement-reward reproduction on the four-reviewer panel.
Verdict AgreementScores() {
  Verdict out;
  const auto panel = testing::SmallFourReviewerPanel();
  const auto params = ComputeAgreementParams(Rule::kQuadratic, panel.prior());
  const double v = 4.0;
  out.Require(Near(params.gamma, (v + 2.0) / 2.0, 1e-12), "gamma " + Fmt("%.17g", params.gamma));
  out.Require(Near(params.lambda, -v / (2.0 * v + 4.0), 1e-12),
              "lambda " + Fmt("%.17g", params.lambda));
  const auto report = ReviewScores(panel, AgreementSpec(Rule::kQuadratic, panel.prior()),
                                   Summarizer::Identity());
  out.Require(report.scores == std::vector<double>{1.0, 1.0, 0.0, 0.0},
              "scores not exactly (1,1,0,0)");
  return out;
}

// Ranked probability score reproduction on the same panel.
Verdict RankedProbabilityScores() {
  Verdict out;
  const auto panel = testing::SmallFourReviewerPanel();
  const auto report = ReviewScores(panel, ScoringRuleSpec(Rule::kRankedProbability, 1.0, 4.0),
                                   Summarizer::Identity());
  const std::vector<double> scores = {9.1667, 9.1667, 8.4167, 8.1667};
  for (std::size_t i = 0; i < 4; ++i) {
    out.Require(Near(report.scores[i], scores[i], 5e-4),
                "score " + std::to_string(i) + " = " + Fmt("%.6f", report.scores[i]));
  }
  // Base values (lambda removed) for the pairs listed in the worked example:
  // reviewer 1 vs outcomes 0, 1, 4 and reviewer 3 vs outcomes 0, 4.
  const std::vector<std::pair<std::size_t, std::size_t>> cells = {
      {0, 1}, {0, 2}, {0, 3}, {2, 0}, {2, 3}};
  const std::vector<double> base = {-0.8333, -0.5, -1.5, -1.0833, -1.4167};
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const double value = report.pairwise(cells[k].first, cells[k].second) - 4.0;
    out.Require(Near(value, base[k], 5e-5), "pairwise value " + Fmt("%.6f", value));
  }
  return out;
}

// Three-reviewer, three-criteria consensus reproduction.
Verdict ThreeCriteriaConsensus() {
  Verdict out;
  const auto panel = testing::ThreeCriteriaPanel();
  const auto phi1 = PosteriorPredictive(panel.prior(), panel.review(0));
  const auto phi3 = PosteriorPredictive(panel.prior(), panel.review(2));
  out.Require(phi1 == ProbabilityVector({2.0 / 8, 2.0 / 8, 1.0 / 8, 2.0 / 8, 1.0 / 8}),
              "predictive of reviewer 1");
  out.Require(phi3 == ProbabilityVector({1.0 / 8, 1.0 / 8, 1.0 / 8, 1.0 / 8, 4.0 / 8}),
              "predictive of reviewer 3");
  const auto w = ConsensusWeights(panel, ScoringRuleSpec(Rule::kQuadratic, 1.0, 1.0));
  const std::vector<std::vector<double>> printed = {
      {0.3545, 0.3455, 0.3000}, {0.3455, 0.3545, 0.3000}, {0.3158, 0.3158, 0.3684}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      out.Require(Near(w(i, j), printed[i][j], 1e-4), "weight " + Fmt("%.6f", w(i, j)));
    }
  }
  const auto result = DegrootLimit(w, panel.ScoreMatrix());
  const std::vector<double> beta = {0.3390, 0.3390, 0.3220};
  const std::vector<double> consensual = {1.288, 2.305, 3.322};
  const std::vector<double> average = {1.333, 2.333, 3.333};
  const auto mean = AverageReview(panel);
  for (std::size_t i = 0; i < 3; ++i) {
    out.Require(Near(result.beta[i], beta[i], 1e-4), "beta " + Fmt("%.6f", result.beta[i]));
    out.Require(Near(result.consensual[i], consensual[i], 1e-3),
                "consensual " + Fmt("%.6f", result.consensual[i]));
    out.Require(Near(mean[i], average[i], 1e-3), "average " + Fmt("%.6f", mean[i]));
  }
  return out;
}

// Single-signal honesty over every integer prior with pseudo-counts <= 3.
Verdict SingleSignalHonesty() {
  Verdict out;
  const auto tally = testing::CheckSingleSignalHonesty(
      3, {1.0, 2.0, 3.0},
      {Rule::kLogarithmic, Rule::kQuadratic, Rule::kSpherical, Rule::kRankedProbability});
  out.Require(tally.failures == 0, std::to_string(tally.failures) + " failing cases");
  out.Require(tally.enumerations <= 10000,
              std::to_string(tally.enumerations) + " enumerations");
  if (out.ok) {
    out.detail = std::to_string(tally.cases) + " cases, " +
                 std::to_string(tally.enumerations) + " enumerations";
  }
  return out;
}

// Mode summarization over every unique-mode signal multiset.
Verdict ModeOptimality() {
  Verdict out;
  const auto tally = testing::CheckModeOptimality(3, 5, {1.0, 2.0, 3.0},
                                                  {Rule::kQuadratic, Rule::kSpherical});
  out.Require(tally.failures == 0, std::to_string(tally.failures) + " failing cases");
  if (out.ok) out.detail = std::to_string(tally.cases) + " cases";
  return out;
}

// Convergence of the weighted consensus on random panels.
Verdict ConsensusConvergence() {
  Verdict out;
  Rng rng = MakeRng(20240601, 0);
  for (int trial = 0; trial < 100 && out.ok; ++trial) {
    const auto c = testing::RandomPositivePanel(rng);
    const auto w = ConsensusWeights(c.panel, c.spec);
    const auto r0 = c.panel.ScoreMatrix();
    const auto result = DegrootLimit(w, r0);
    const std::string tag = "panel " + std::to_string(trial) + ": ";
    out.Require(result.residual < 1e-10, tag + "residual " + Fmt("%.3g", result.residual));
    for (std::size_t i = 1; i < c.panel.size(); ++i) {
      for (std::size_t j = 0; j < c.panel.size(); ++j) {
        out.Require(Near(result.limit(i, j), result.limit(0, j), 1e-10), tag + "rows differ");
      }
    }
    for (std::size_t m = 0; m < c.panel.rho(); ++m) {
      double pooled = 0.0;
      for (std::size_t i = 0; i < c.panel.size(); ++i) pooled += result.beta[i] * r0(i, m);
      out.Require(Near(result.consensual[m], pooled, 1e-9), tag + "linear pool identity");
    }
  }
  return out;
}

// Properness on rational grids plus affine invariance of the argmax.
Verdict ProperGrid() {
  Verdict out;
  for (Rule rule : {Rule::kLogarithmic, Rule::kQuadratic, Rule::kSpherical,
                    Rule::kRankedProbability}) {
    for (const auto& [g, l] : std::vector<std::pair<double, double>>{
             {1.0, 0.0}, {3.0, -1.0 / 3.0}, {0.25, 4.0}}) {
      for (std::size_t outcomes = 2; outcomes <= 5; ++outcomes) {
        for (std::size_t d = 1; d <= 8; ++d) {
          if (rule == Rule::kLogarithmic && d < outcomes) continue;
          const auto r = testing::CheckProperOnGrid(ScoringRuleSpec(rule, g, l), outcomes, d);
          out.Require(r.failures == 0, std::string(RuleName(rule)) + " outcomes=" +
                                           std::to_string(outcomes) + " d=" +
                                           std::to_string(d));
        }
      }
    }
  }
  return out;
}

// Synthetic substitute for the human-subject study.
Verdict SyntheticStudy() {
  Verdict out;
  sim::SimConfig config;
  config.n = 5;
  config.rho = 3;
  config.trials = 1000;
  config.seed = 8;
  config.spec = ScoringRuleSpec(Rule::kQuadratic, 1.0, 1.0);
  const auto summary = sim::SyntheticBootstrapStudy(config, 20);
  out.Require(summary.panels == 1000, "panel count");
  for (const auto& row : summary.criteria) {
    out.Require(std::isfinite(row.consensus_mean) && std::isfinite(row.average_mean),
                "non-finite error");
  }

  const auto identity = sim::BootstrapCompare(testing::ThreeCriteriaPanel(), {1, 2, 3},
                                              {{0, 1, 2}}, config.spec);
  const std::vector<double> consensus = {0.288, 0.305, 0.322};
  for (std::size_t c = 0; c < 3; ++c) {
    out.Require(Near(identity.criteria[c].consensus_mean, consensus[c], 1e-3),
                "identity resample consensus error");
    out.Require(Near(identity.criteria[c].average_mean, 1.0 / 3.0, 1e-3),
                "identity resample average error");
  }

  sim::SimConfig honesty;
  honesty.n = 10;
  honesty.trials = 1000;
  honesty.seed = 8;
  honesty.spec = AgreementSpec(Rule::kQuadratic, honesty.prior);
  const auto cmp = sim::CompareStrategies(honesty, sim::Honest{}, sim::RandomReport{9});
  out.Require(cmp.mean_first > cmp.mean_second,
              "honest " + Fmt("%.4f", cmp.mean_first) + " <= random " +
                  Fmt("%.4f", cmp.mean_second));
  if (out.ok) {
    const auto& first = summary.criteria.front();
    out.detail = "consensus err " + Fmt("%.4f", first.consensus_mean) + ", average err " +
                 Fmt("%.4f", first.average_mean) + ", honest " +
                 Fmt("%.4f", cmp.mean_first) + " > random " + Fmt("%.4f", cmp.mean_second);
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_ms;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "agreement reward scores (1,1,0,0)", 1.0, AgreementScores},
      {2, "ranked probability scores", 1.0, RankedProbabilityScores},
      {3, "three-criteria consensus", 10.0, ThreeCriteriaConsensus},
      {4, "single-signal honesty, exhaustive", 1000.0, SingleSignalHonesty},
      {5, "mode summarization, exhaustive", 5000.0, ModeOptimality},
      {6, "consensus convergence, 100 panels", 2000.0, ConsensusConvergence},
      {7, "properness grid and affine invariance", 5000.0, ProperGrid},
      {8, "synthetic bootstrap and honesty link", -1.0, SyntheticStudy},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Verdict outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.budget_ms > 0 && ms >= c.budget_ms && outcome.ok) {
      outcome.ok = false;
      outcome.detail = "over time budget of " + Fmt("%.0f ms", c.budget_ms);
    }
    if (!outcome.ok) ++failures;
    std::printf("%s criterion %d: %s (%.3f ms)%s%s\n", outcome.ok ? "PASS" : "FAIL", c.id,
                c.name, ms, outcome.detail.empty() ? "" : " - ", outcome.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
