#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cli/config.hpp"
#include "peerscore/error.hpp"

namespace peerscore::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNumeric = 4;

int ExitCodeFor(ErrorCategory category);

// Environment variable naming the directory for relative --output paths.
inline constexpr const char* kOutputDirEnv = "PEERSCORE_OUTPUT_DIR";

// Runs the command and returns {"tool", "config", "result"}, where "config"
// is the fully resolved configuration. Throws peerscore::Error.
nlohmann::json Execute(const RunConfig& config);

// JSON carries full precision; CSV writes shortest round-trip decimals;
// the table rounds to four decimals for display.
std::string Render(const nlohmann::json& document, OutputFormat format);

// Shortest decimal string that parses back to exactly `value`.
std::string ShortestDecimal(double value);

// Execute + Render + write; errors are reported on `err` and mapped to an
// exit code.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Where a non-empty --output path ends up, honoring kOutputDirEnv.
std::string ResolveOutputPath(const std::string& output);

}  // namespace peerscore::cli
