#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/run.hpp"

using peerscore::cli::RunConfig;

namespace {

std::vector<std::size_t> ParseGold(const std::string& text) {
  std::vector<std::size_t> gold;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(item, &used);
      if (used != item.size() || value < 0) throw std::invalid_argument(item);
      gold.push_back(static_cast<std::size_t>(value));
    } catch (const std::exception&) {
      throw peerscore::ConfigError("invalid --gold entry '" + item + "'");
    }
  }
  return gold;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peer-prediction review scoring and score-weighted consensus"};
  app.require_subcommand(0, 1);

  RunConfig config;
  std::string format = "json";
  std::string input_format;
  std::string gold;
  std::string replay;

  app.add_option("--config", replay,
                 "Re-run the configuration embedded in a JSON artifact");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "Review file (.csv or .json)");
    sub->add_option("--input-format", input_format, "csv | json (default: by extension)");
    sub->add_option("--format", format, "Output format: json | csv | table");
    sub->add_option("--rule", config.rule, "logarithmic | quadratic | spherical | rps");
    sub->add_option("--gamma", config.gamma, "Affine scale (> 0)");
    sub->add_option("--lambda", config.lambda, "Affine shift");
    sub->add_flag("--agreement", config.agreement,
                  "Derive gamma and lambda so agreement scores 1 and disagreement 0");
    sub->add_option("--alpha", config.alpha, "uniform:<k> or a0,a1,...");
    sub->add_option("--v", config.v, "Best evaluation score");
    sub->add_option("--summarizer", config.summarizer, "identity | mode | median");
    sub->add_option("--tie-break", config.tie_break, "random | lowest");
    sub->add_option("--seed", config.seed, "Random seed");
    sub->add_option("--tol", config.tol, "Consensus tolerance");
    sub->add_option("--max-iter", config.max_iter, "Maximum matrix squarings");
    sub->add_option("--resamples", config.resamples, "Bootstrap resamples");
    sub->add_option("--gold", gold, "Gold-standard review, e.g. 1,2,3");
    sub->add_option("--n", config.n, "Simulated reviewers");
    sub->add_option("--rho", config.rho, "Simulated criteria per review");
    sub->add_option("--trials", config.trials, "Simulation trials");
    sub->add_option("--output", config.output,
                    "Output file (relative paths honor $PEERSCORE_OUTPUT_DIR)");
  };

  auto* score = app.add_subcommand("score", "Peer-prediction review scores");
  auto* consensus = app.add_subcommand("consensus", "Score-weighted consensual review");
  auto* simulate = app.add_subcommand("simulate", "Synthetic accuracy and honesty experiments");
  auto* bootstrap = app.add_subcommand("bootstrap", "Bootstrap consensus vs average accuracy");
  for (auto* sub : {score, consensus, simulate, bootstrap}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return peerscore::cli::kExitConfig;
  }

  try {
    if (!replay.empty()) {
      std::ifstream in(replay);
      if (!in) throw peerscore::ConfigError("cannot open config '" + replay + "'");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw peerscore::ConfigError(std::string("malformed config file: ") + e.what());
      }
      const auto output = config.output;
      config = peerscore::cli::FromJson(doc.contains("config") ? doc.at("config") : doc);
      config.output = output;
    } else {
      const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
      if (!sub) throw peerscore::ConfigError("a subcommand or --config is required");
      config.command = *peerscore::cli::ParseCommand(sub->get_name());
      const auto parsed = peerscore::cli::ParseOutputFormat(format);
      if (!parsed) throw peerscore::ConfigError("unknown --format '" + format + "'");
      config.format = *parsed;
      if (!input_format.empty()) {
        if (input_format != "csv" && input_format != "json") {
          throw peerscore::ConfigError("unknown --input-format '" + input_format + "'");
        }
        config.input_format = input_format == "csv" ? peerscore::cli::InputFormat::kCsv
                                                    : peerscore::cli::InputFormat::kJson;
      }
      if (!gold.empty()) config.gold = ParseGold(gold);
    }
  } catch (const peerscore::Error& e) {
    std::cerr << "peerscore: " << e.what() << "\n";
    return peerscore::cli::ExitCodeFor(e.category());
  }

  return peerscore::cli::Run(config, std::cout, std::cerr);
}
