#include "imreg_cli/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <iostream>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "imreg/errors.hpp"
#include "imreg_cli/schema.hpp"

namespace imreg::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes via a sibling temporary so readers never see a partial file.
void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-sample image registration: bounds, decoders and type counting", "imreg"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  unsigned threads = 1;
  bool strict = false;
  bool print_schema = false;

  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Base seed (overrides the config's seed)");
  app.add_option("--out", out_path, "Payload destination; the envelope goes to <out>.envelope.json");
  app.add_option("--threads", threads, "Worker threads; never changes results")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("--strict", strict, "Treat enumeration budget overruns as errors (exit 4)");
  app.add_flag("--print-schema", print_schema, "Print the command's config schema and exit");

  const std::map<std::string, std::string> help = {
      {"moments", "Information-density moments and rate-function samples"},
      {"bound", "Four-term threshold-decoder error bound at one operating point"},
      {"samplesize", "Minimum sufficient sample size over epsilon x crossover grids (CSV)"},
      {"simulate", "Monte Carlo decoder error rates with the analytic bound column (CSV)"},
      {"typecount", "Exact delay-type class sizes against the analytic bands (CSV)"},
      {"gap", "MMI versus ML exponent-gap bound, optionally with a simulated estimate"},
      {"validate-family", "Check a transformation family's group assumptions"},
  };
  for (const auto& name : command_names()) app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (print_schema) {
    out << command_schema(command).dump(2) << "\n";
    return kExitOk;
  }

  const std::string started = utc_now();
  Json config;
  RunOptions options;
  options.threads = threads;
  options.strict = strict;
  try {
    if (config_path.empty()) throw ConfigError("--config is required");
    config = load_config(config_path);
    const auto problems = validate_schema(command_schema(command), config);
    if (!problems.empty()) {
      std::string msg = "config does not match the " + command + " schema:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw ConfigError(msg);
    }
    options.config_dir = std::filesystem::path(config_path).parent_path().string();
    if (options.config_dir.empty()) options.config_dir = ".";
    options.seed = seed ? *seed : config.value("seed", std::uint64_t{0});

    const Payload payload = run_command(command, config, options);

    if (out_path.empty()) {
      out << payload.text;
    } else {
      write_file(out_path, payload.text);
      Json envelope;
      envelope["tool"] = "imreg";
      envelope["version"] = kToolVersion;
      envelope["command"] = command;
      envelope["schema_version"] = kSchemaVersion;
      envelope["seed"] = options.seed;
      envelope["threads"] = options.threads;
      envelope["strict"] = options.strict;
      envelope["config"] = config;
      envelope["payload_path"] = std::filesystem::path(out_path).filename().string();
      envelope["payload_format"] = payload.format;
      envelope["started_at"] = started;
      envelope["finished_at"] = utc_now();
      write_file(out_path + ".envelope.json", envelope.dump(2) + "\n");
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "imreg: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ShapeError& e) {
    err << "imreg: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "imreg: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "imreg: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DegenerateError& e) {
    err << "imreg: degenerate input: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const InsufficientDataError& e) {
    err << "imreg: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const BudgetError& e) {
    err << "imreg: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "imreg: error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace imreg::cli
