#include "cli/run.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <variant>

#include "peerscore/consensus.hpp"
#include "peerscore/panel.hpp"
#include "peerscore/random.hpp"
#include "peerscore/sim.hpp"

namespace peerscore::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kSimOmegaStream = 0x0e0a;

std::string JoinAlpha(std::span<const double> alpha) {
  std::string out;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (k) out += ",";
    out += ShortestDecimal(alpha[k]);
  }
  return out;
}

// Fixes v and alpha from flags and file, recording the outcome in `config`.
DirichletPrior ResolvePrior(RunConfig& config, const RawReviews* raw) {
  std::optional<std::size_t> v = config.v;
  if (raw && raw->v) {
    if (v && *v != *raw->v) {
      throw ConfigError("--v " + std::to_string(*v) +
                        " conflicts with v = " + std::to_string(*raw->v) +
                        " in the input");
    }
    v = raw->v;
  }

  std::vector<double> alpha;
  if (!config.alpha.empty()) {
    alpha = ParseAlpha(config.alpha, v);
  } else if (raw && raw->alpha) {
    alpha = *raw->alpha;
    if (v && alpha.size() != *v + 1) {
      throw ConfigError("alpha in the input does not have v + 1 entries");
    }
  } else {
    if (!v) throw ConfigError("cannot tell the best score: pass --v or --alpha");
    alpha.assign(*v + 1, 1.0);
  }
  if (alpha.size() < 2) throw ConfigError("alpha needs at least two entries");

  try {
    DirichletPrior prior(alpha);
    config.v = prior.best_score();
    config.alpha = JoinAlpha(prior.alpha());
    return prior;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid alpha: ") + e.what());
  }
}

ReviewPanel LoadPanel(RunConfig& config) {
  if (config.input.empty()) throw ConfigError("--input is required");
  if (!config.input_format) {
    config.input_format = FormatFromPath(config.input);
    if (!config.input_format) {
      throw ConfigError("cannot infer input format from '" + config.input +
                        "'; pass --input-format csv|json");
    }
  }
  const RawReviews raw = ReadReviews(config.input, *config.input_format);
  DirichletPrior prior = ResolvePrior(config, &raw);
  CheckScoreRange(raw, prior.best_score());
  if (raw.scores.size() < 2) {
    throw InputError("a panel needs at least two reviewers");
  }
  std::vector<Review> reviews;
  reviews.reserve(raw.scores.size());
  for (const auto& s : raw.scores) reviews.emplace_back(s);
  return ReviewPanel(std::move(prior), std::move(reviews), raw.reviewer_ids);
}

ScoringRuleSpec ResolveSpec(RunConfig& config, const DirichletPrior& prior) {
  const auto rule = ParseRule(config.rule);
  if (!rule) throw ConfigError("unknown rule '" + config.rule + "'");
  config.rule = std::string(RuleName(*rule));
  if (config.agreement) {
    if (!prior.is_non_informative()) {
      throw ConfigError("--agreement needs a uniform alpha (non-informative prior)");
    }
    if (!IsSymmetric(*rule) || !IsBounded(*rule)) {
      throw ConfigError("--agreement needs a symmetric bounded rule "
                        "(quadratic or spherical)");
    }
    const auto params = ComputeAgreementParams(*rule, prior);
    config.gamma = params.gamma;
    config.lambda = params.lambda;
    return ScoringRuleSpec::Normalized(*rule, params.delta_min,
                                        params.delta_max - params.delta_min);
  }
  try {
    return ScoringRuleSpec(*rule, config.gamma, config.lambda);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

json MatrixJson(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

json RunScore(RunConfig& config) {
  const auto panel = LoadPanel(config);
  const auto spec = ResolveSpec(config, panel.prior());
  const auto summarizer = MakeSummarizer(config);
  if (summarizer.kind == Summarizer::Kind::kIdentity && panel.rho() > 1) {
    throw ConfigError("reviews have " + std::to_string(panel.rho()) +
                      " scores; choose --summarizer mode or median");
  }
  const auto report = ReviewScores(panel, spec, summarizer);
  return {{"reviewers", panel.reviewer_ids()},
          {"outcomes", report.outcomes},
          {"scores", report.scores},
          {"pairwise", MatrixJson(report.pairwise)}};
}

ConsensusOptions Options(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (config.max_iter < 1) throw ConfigError("--max-iter must be at least 1");
  return {config.tol, config.max_iter};
}

json RunConsensus(RunConfig& config) {
  const auto panel = LoadPanel(config);
  const auto spec = ResolveSpec(config, panel.prior());
  const auto options = Options(config);
  const auto weights = ConsensusWeights(panel, spec);
  const auto limit = DegrootLimit(weights, panel.ScoreMatrix(), options);
  const auto beta = limit.beta.values();
  return {{"reviewers", panel.reviewer_ids()},
          {"weights", MatrixJson(weights.matrix())},
          {"beta", std::vector<double>(beta.begin(), beta.end())},
          {"consensual", limit.consensual},
          {"average", AverageReview(panel)},
          {"iterations", limit.iterations},
          {"residual", limit.residual}};
}

json RunBootstrap(RunConfig& config) {
  const auto panel = LoadPanel(config);
  const auto spec = ResolveSpec(config, panel.prior());
  const auto options = Options(config);
  if (config.gold.empty()) throw ConfigError("bootstrap needs --gold");
  if (config.gold.size() != panel.rho()) {
    throw ConfigError("--gold has " + std::to_string(config.gold.size()) +
                      " scores, reviews have " + std::to_string(panel.rho()));
  }
  for (std::size_t g : config.gold) {
    if (g > panel.best_score()) throw ConfigError("--gold score exceeds v");
  }
  if (config.resamples < 1) throw ConfigError("--resamples must be at least 1");
  const auto table = sim::BootstrapCompare(panel, config.gold, config.resamples,
                                           config.seed, spec, options);
  json rows = json::array();
  for (std::size_t c = 0; c < table.criteria.size(); ++c) {
    const auto& row = table.criteria[c];
    rows.push_back({{"criterion", c + 1},
                    {"average_mean", row.average_mean},
                    {"average_sd", row.average_sd},
                    {"consensus_mean", row.consensus_mean},
                    {"consensus_sd", row.consensus_sd}});
  }
  return {{"resamples", table.resamples}, {"criteria", rows}};
}

json RunSimulate(RunConfig& config) {
  DirichletPrior prior = ResolvePrior(config, nullptr);
  const auto spec = ResolveSpec(config, prior);
  const auto summarizer = MakeSummarizer(config);
  if (config.n < 2) throw ConfigError("--n must be at least 2");
  if (config.rho < 1) throw ConfigError("--rho must be at least 1");
  if (config.trials < 1) throw ConfigError("--trials must be at least 1");
  if (summarizer.kind == Summarizer::Kind::kIdentity && config.rho > 1) {
    throw ConfigError("--rho > 1 needs --summarizer mode or median");
  }

  sim::SimConfig sc;
  sc.n = config.n;
  sc.rho = config.rho;
  sc.prior = prior;
  sc.trials = config.trials;
  sc.seed = config.seed;
  sc.spec = spec;

  Rng rng = MakeRng(config.seed, kSimOmegaStream);
  const sim::TrueQuality quality{SampleDirichlet(rng, prior.alpha())};

  std::vector<std::size_t> sizes;
  for (std::size_t s = 1; s < config.n; s *= 2) sizes.push_back(s);
  sizes.push_back(config.n);
  const auto series = sim::AccuracyConvergence(sc, quality, sizes);
  json accuracy = json::array();
  for (const auto& point : series) {
    accuracy.push_back({{"n", point.n}, {"mean_tv", point.mean_distance}});
  }

  const auto comparison = sim::CompareStrategies(
      sc, sim::Honest{}, sim::RandomReport{config.seed}, summarizer);
  const auto omega = quality.omega.values();
  return {{"omega", std::vector<double>(omega.begin(), omega.end())},
          {"accuracy", accuracy},
          {"honest_mean_score", comparison.mean_first},
          {"random_mean_score", comparison.mean_second}};
}

// ---- rendering ----

using Cell = std::variant<std::string, double, long long>;

struct Section {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

Cell FromJson(const json& value) {
  if (value.is_number_integer()) return value.get<long long>();
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

std::vector<Section> Sections(const json& doc) {
  const auto command = ParseCommand(doc.at("config").at("command").get<std::string>());
  const json& result = doc.at("result");
  std::vector<Section> out;

  auto matrix_section = [&](const std::string& name, const json& matrix) {
    Section s{name, {"reviewer"}, {}};
    const auto& ids = result.at("reviewers");
    for (const auto& id : ids) s.header.push_back(id.get<std::string>());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      std::vector<Cell> row{ids[i].get<std::string>()};
      for (const auto& x : matrix[i]) row.push_back(FromJson(x));
      s.rows.push_back(std::move(row));
    }
    return s;
  };

  switch (*command) {
    case Command::kScore: {
      Section s{"scores", {"reviewer", "outcome", "score"}, {}};
      for (std::size_t i = 0; i < result.at("scores").size(); ++i) {
        s.rows.push_back({result.at("reviewers")[i].get<std::string>(),
                          FromJson(result.at("outcomes")[i]),
                          FromJson(result.at("scores")[i])});
      }
      out.push_back(std::move(s));
      out.push_back(matrix_section("pairwise", result.at("pairwise")));
      break;
    }
    case Command::kConsensus: {
      out.push_back(matrix_section("weights", result.at("weights")));
      Section beta{"beta", {"reviewer", "beta"}, {}};
      for (std::size_t i = 0; i < result.at("beta").size(); ++i) {
        beta.rows.push_back({result.at("reviewers")[i].get<std::string>(),
                             FromJson(result.at("beta")[i])});
      }
      out.push_back(std::move(beta));
      Section review{"review", {"criterion", "consensual", "average"}, {}};
      for (std::size_t c = 0; c < result.at("consensual").size(); ++c) {
        review.rows.push_back({static_cast<long long>(c + 1),
                               FromJson(result.at("consensual")[c]),
                               FromJson(result.at("average")[c])});
      }
      out.push_back(std::move(review));
      out.push_back({"convergence",
                     {"iterations", "residual"},
                     {{FromJson(result.at("iterations")),
                       FromJson(result.at("residual"))}}});
      break;
    }
    case Command::kBootstrap: {
      Section s{"bootstrap",
                {"criterion", "average_mean", "average_sd", "consensus_mean",
                 "consensus_sd"},
                {}};
      for (const auto& row : result.at("criteria")) {
        s.rows.push_back({FromJson(row.at("criterion")),
                          FromJson(row.at("average_mean")),
                          FromJson(row.at("average_sd")),
                          FromJson(row.at("consensus_mean")),
                          FromJson(row.at("consensus_sd"))});
      }
      out.push_back(std::move(s));
      out.push_back({"resamples", {"resamples"}, {{FromJson(result.at("resamples"))}}});
      break;
    }
    case Command::kSimulate: {
      Section omega{"omega", {"score", "probability"}, {}};
      for (std::size_t k = 0; k < result.at("omega").size(); ++k) {
        omega.rows.push_back(
            {static_cast<long long>(k), FromJson(result.at("omega")[k])});
      }
      out.push_back(std::move(omega));
      Section acc{"accuracy", {"n", "mean_tv"}, {}};
      for (const auto& p : result.at("accuracy")) {
        acc.rows.push_back({FromJson(p.at("n")), FromJson(p.at("mean_tv"))});
      }
      out.push_back(std::move(acc));
      out.push_back({"strategies",
                     {"strategy", "mean_score"},
                     {{std::string("honest"), FromJson(result.at("honest_mean_score"))},
                      {std::string("random"), FromJson(result.at("random_mean_score"))}}});
      break;
    }
  }
  return out;
}

std::string CsvCell(const Cell& cell) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, double>) {
          return ShortestDecimal(x);
        } else {
          return std::to_string(x);
        }
      },
      cell);
}

std::string TableCell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << *d;
    return out.str();
  }
  return CsvCell(cell);
}

std::string RenderCsv(const json& doc) {
  std::ostringstream out;
  out << "# config " << doc.at("config").dump() << "\n";
  bool first = true;
  for (const auto& s : Sections(doc)) {
    if (!first) out << "\n";
    first = false;
    out << "# " << s.name << "\n";
    for (std::size_t k = 0; k < s.header.size(); ++k) {
      out << (k ? "," : "") << s.header[k];
    }
    out << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        out << (k ? "," : "") << CsvCell(row[k]);
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string RenderTable(const json& doc) {
  std::ostringstream out;
  out << "config: " << doc.at("config").dump() << "\n";
  for (const auto& s : Sections(doc)) {
    std::vector<std::vector<std::string>> text;
    text.push_back(s.header);
    for (const auto& row : s.rows) {
      std::vector<std::string> line;
      for (const auto& cell : row) line.push_back(TableCell(cell));
      text.push_back(std::move(line));
    }
    std::vector<std::size_t> width(s.header.size(), 0);
    for (const auto& line : text) {
      for (std::size_t k = 0; k < line.size(); ++k) {
        width[k] = std::max(width[k], line[k].size());
      }
    }
    out << "\n" << s.name << "\n";
    for (const auto& line : text) {
      for (std::size_t k = 0; k < line.size(); ++k) {
        out << (k ? "  " : "") << std::setw(static_cast<int>(width[k]))
            << line[k];
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace

int ExitCodeFor(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kConfig:
      return kExitConfig;
    case ErrorCategory::kInput:
      return kExitInput;
    case ErrorCategory::kNumeric:
      return kExitNumeric;
  }
  return kExitNumeric;
}

std::string ShortestDecimal(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

json Execute(const RunConfig& input) {
  ValidateRunConfig(input);
  RunConfig config = input;
  json result;
  switch (config.command) {
    case Command::kScore:
      result = RunScore(config);
      break;
    case Command::kConsensus:
      result = RunConsensus(config);
      break;
    case Command::kBootstrap:
      result = RunBootstrap(config);
      break;
    case Command::kSimulate:
      result = RunSimulate(config);
      break;
  }
  return {{"tool", "peerscore"}, {"config", ToJson(config)}, {"result", result}};
}

std::string Render(const json& document, OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson:
      return document.dump(2) + "\n";
    case OutputFormat::kCsv:
      return RenderCsv(document);
    case OutputFormat::kTable:
      return RenderTable(document);
  }
  return {};
}

std::string ResolveOutputPath(const std::string& output) {
  std::filesystem::path path(output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path.string();
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto document = Execute(config);
    const auto text = Render(document, config.format);
    if (config.output.empty() || config.output == "-") {
      out << text;
    } else {
      const auto path = ResolveOutputPath(config.output);
      std::ofstream file(path);
      if (!file || !(file << text)) {
        throw ConfigError("cannot write output file '" + path + "'");
      }
    }
    return kExitSuccess;
  } catch (const Error& e) {
    err << "peerscore: " << e.what() << "\n";
    return ExitCodeFor(e.category());
  }
}

}  // namespace peerscore::cli
