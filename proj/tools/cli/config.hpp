#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/ingest.hpp"
#include "peerscore/bayes.hpp"
#include "peerscore/panel.hpp"
#include "peerscore/rules.hpp"

namespace peerscore::cli {

enum class Command { kScore, kConsensus, kSimulate, kBootstrap };
enum class OutputFormat { kJson, kCsv, kTable };

std::string_view CommandName(Command command);
std::optional<Command> ParseCommand(std::string_view name);
std::string_view OutputFormatName(OutputFormat format);
std::optional<OutputFormat> ParseOutputFormat(std::string_view name);

// Everything a run depends on. Emitted verbatim (after resolution) with
// every artifact so the run can be repeated.
struct RunConfig {
  Command command = Command::kScore;

  std::string input;
  std::optional<InputFormat> input_format;

  std::string rule = "quadratic";
  double gamma = 1.0;
  double lambda = 0.0;
  bool agreement = false;

  // "uniform:<pseudo-count>" or a comma-separated list; empty means the
  // input file's alpha, else uniform:1.
  std::string alpha;
  std::optional<std::size_t> v;

  std::string summarizer = "identity";  // identity | mode | median
  std::string tie_break = "random";     // random | lowest
  std::uint64_t seed = 0;

  double tol = 1e-12;
  int max_iter = 200;

  std::size_t resamples = 1000;
  std::vector<std::size_t> gold;

  // simulate
  std::size_t n = 10;
  std::size_t rho = 1;
  std::size_t trials = 100;

  OutputFormat format = OutputFormat::kJson;
  std::string output;  // empty or "-" for stdout
};

nlohmann::json ToJson(const RunConfig& config);
RunConfig FromJson(const nlohmann::json& doc);

// Parses "uniform:k" (needs v) or an explicit list "a0,a1,...".
std::vector<double> ParseAlpha(const std::string& text,
                               std::optional<std::size_t> v);

Summarizer MakeSummarizer(const RunConfig& config);

// Checks option consistency that does not need the input file: rule and
// summarizer names, numeric ranges, and that --agreement is paired with a
// symmetric bounded rule and an all-equal alpha. Throws ConfigError.
void ValidateRunConfig(const RunConfig& config);

}  // namespace peerscore::cli
