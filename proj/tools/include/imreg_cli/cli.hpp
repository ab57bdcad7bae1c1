#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace imreg::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitDegenerate = 3,
  kExitBudget = 4,
};

struct RunOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool strict = false;
  std::string config_dir = ".";  // relative family files resolve here
};

struct Payload {
  std::string format;  // "json" or "csv"
  std::string text;
};

/// Command names in a fixed order.
const std::vector<std::string>& command_names();

/// Published JSON schema of a command's config.
const nlohmann::ordered_json& command_schema(const std::string& command);

/// Runs a validated config. Throws the core exception types on failure.
Payload run_command(const std::string& command, const nlohmann::ordered_json& config,
                    const RunOptions& options);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace imreg::cli
