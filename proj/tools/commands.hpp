#ifndef NSSOL_TOOLS_COMMANDS_HPP
#define NSSOL_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nssol/io.hpp"

namespace nssol::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kRuntimeError = 3,
};

struct Options {
  std::string config_path;
  std::string out_path;                ///< overrides output.path when non-empty
  std::optional<OutputFormat> format;  ///< overrides output.format
  bool quiet = false;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand. Primary output goes to `out` unless a path is set;
/// diagnostics, status records and error JSON go to `err`.
int run(const std::string& command, const Options& options, std::ostream& out, std::ostream& err);

/// Same as `run` with an already parsed configuration.
int run(const std::string& command, const RunConfig& config, const Options& options, std::ostream& out,
        std::ostream& err);

}  // namespace nssol::cli

#endif  // NSSOL_TOOLS_COMMANDS_HPP
