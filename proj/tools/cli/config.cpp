#include "cli/config.hpp"

#include <charconv>
#include <sstream>

#include "peerscore/error.hpp"

namespace peerscore::cli {

namespace {

double ParseDouble(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("invalid " + what + ": '" + text + "'");
  }
  return value;
}

}  // namespace

std::string_view CommandName(Command command) {
  switch (command) {
    case Command::kScore:
      return "score";
    case Command::kConsensus:
      return "consensus";
    case Command::kSimulate:
      return "simulate";
    case Command::kBootstrap:
      return "bootstrap";
  }
  return "unknown";
}

std::optional<Command> ParseCommand(std::string_view name) {
  for (auto c : {Command::kScore, Command::kConsensus, Command::kSimulate,
                 Command::kBootstrap}) {
    if (CommandName(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view OutputFormatName(OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kTable:
      return "table";
  }
  return "unknown";
}

std::optional<OutputFormat> ParseOutputFormat(std::string_view name) {
  for (auto f : {OutputFormat::kJson, OutputFormat::kCsv, OutputFormat::kTable}) {
    if (OutputFormatName(f) == name) return f;
  }
  return std::nullopt;
}

nlohmann::json ToJson(const RunConfig& c) {
  nlohmann::json doc;
  doc["command"] = CommandName(c.command);
  doc["input"] = c.input;
  if (c.input_format) {
    doc["input_format"] = *c.input_format == InputFormat::kCsv ? "csv" : "json";
  }
  doc["rule"] = c.rule;
  doc["gamma"] = c.gamma;
  doc["lambda"] = c.lambda;
  doc["agreement"] = c.agreement;
  doc["alpha"] = c.alpha;
  if (c.v) doc["v"] = *c.v;
  doc["summarizer"] = c.summarizer;
  doc["tie_break"] = c.tie_break;
  doc["seed"] = c.seed;
  doc["tol"] = c.tol;
  doc["max_iter"] = c.max_iter;
  doc["resamples"] = c.resamples;
  doc["gold"] = c.gold;
  doc["n"] = c.n;
  doc["rho"] = c.rho;
  doc["trials"] = c.trials;
  doc["format"] = OutputFormatName(c.format);
  return doc;
}

RunConfig FromJson(const nlohmann::json& doc) {
  RunConfig c;
  try {
    const auto command = ParseCommand(doc.at("command").get<std::string>());
    if (!command) throw ConfigError("unknown command in config");
    c.command = *command;
    c.input = doc.value("input", std::string{});
    if (doc.contains("input_format")) {
      const auto f = doc.at("input_format").get<std::string>();
      if (f != "csv" && f != "json") throw ConfigError("unknown input format");
      c.input_format = f == "csv" ? InputFormat::kCsv : InputFormat::kJson;
    }
    c.rule = doc.value("rule", c.rule);
    c.gamma = doc.value("gamma", c.gamma);
    c.lambda = doc.value("lambda", c.lambda);
    c.agreement = doc.value("agreement", c.agreement);
    c.alpha = doc.value("alpha", c.alpha);
    if (doc.contains("v")) c.v = doc.at("v").get<std::size_t>();
    c.summarizer = doc.value("summarizer", c.summarizer);
    c.tie_break = doc.value("tie_break", c.tie_break);
    c.seed = doc.value("seed", c.seed);
    c.tol = doc.value("tol", c.tol);
    c.max_iter = doc.value("max_iter", c.max_iter);
    c.resamples = doc.value("resamples", c.resamples);
    c.gold = doc.value("gold", c.gold);
    c.n = doc.value("n", c.n);
    c.rho = doc.value("rho", c.rho);
    c.trials = doc.value("trials", c.trials);
    const auto format = ParseOutputFormat(doc.value("format", std::string("json")));
    if (!format) throw ConfigError("unknown output format in config");
    c.format = *format;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed run config: ") + e.what());
  }
  return c;
}

std::vector<double> ParseAlpha(const std::string& text,
                               std::optional<std::size_t> v) {
  constexpr std::string_view kUniform = "uniform:";
  if (text.rfind(kUniform, 0) == 0) {
    if (!v) throw ConfigError("'" + text + "' needs --v to know how many scores");
    const double value =
        ParseDouble(text.substr(kUniform.size()), "uniform pseudo-count");
    if (!(value > 0.0)) throw ConfigError("uniform pseudo-count must be positive");
    return std::vector<double>(*v + 1, value);
  }
  std::vector<double> alpha;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    alpha.push_back(ParseDouble(item, "pseudo-count"));
  }
  if (alpha.size() < 2) {
    throw ConfigError("alpha needs at least two pseudo-counts: '" + text + "'");
  }
  for (double a : alpha) {
    if (!(a > 0.0)) throw ConfigError("pseudo-counts must be positive");
  }
  if (v && alpha.size() != *v + 1) {
    throw ConfigError("alpha has " + std::to_string(alpha.size()) +
                      " entries but v = " + std::to_string(*v) + " needs " +
                      std::to_string(*v + 1));
  }
  return alpha;
}

Summarizer MakeSummarizer(const RunConfig& config) {
  TieBreak tie_break;
  if (config.tie_break == "random") {
    tie_break = TieBreak::kSeededRandom;
  } else if (config.tie_break == "lowest") {
    tie_break = TieBreak::kLowestScore;
  } else {
    throw ConfigError("unknown tie-break '" + config.tie_break + "'");
  }
  if (config.summarizer == "identity") return Summarizer::Identity();
  if (config.summarizer == "median") return Summarizer::Median();
  if (config.summarizer == "mode") return Summarizer::Mode(tie_break, config.seed);
  throw ConfigError("unknown summarizer '" + config.summarizer + "'");
}

void ValidateRunConfig(const RunConfig& config) {
  const auto rule = ParseRule(config.rule);
  if (!rule) throw ConfigError("unknown rule '" + config.rule + "'");
  MakeSummarizer(config);
  if (!(config.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (config.max_iter < 1) throw ConfigError("--max-iter must be at least 1");
  if (config.resamples < 1) throw ConfigError("--resamples must be at least 1");
  if (config.trials < 1) throw ConfigError("--trials must be at least 1");
  if (!config.agreement) return;
  if (!IsSymmetric(*rule) || !IsBounded(*rule)) {
    throw ConfigError("--agreement needs a symmetric bounded rule "
                      "(quadratic or spherical), got " + config.rule);
  }
  if (!config.alpha.empty() && config.alpha.rfind("uniform:", 0) != 0) {
    const auto alpha = ParseAlpha(config.alpha, config.v);
    for (double a : alpha) {
      if (a != alpha.front()) {
        throw ConfigError(
            "--agreement needs a uniform alpha (non-informative prior); got " +
            config.alpha);
      }
    }
  }
}

}  // namespace peerscore::cli
