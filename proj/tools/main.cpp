// nssol: construct and verify self-similar solutions of the radially
// symmetric compressible Navier-Stokes equations with density-dependent
// viscosity.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Self-similar Navier-Stokes solutions: construction and residual verification", "nssol"};
  app.require_subcommand(1);

  struct Parsed {
    nssol::cli::Options options;
    std::string format;
  };
  std::map<std::string, Parsed> parsed;

  const std::map<std::string, std::string> help{
      {"describe", "Validate the configuration and summarize the family"},
      {"profile", "Sample the density profile y(z): CSV z,y,dy"},
      {"scale", "Sample the scaling function a(t): CSV t,a,adot plus a JSON status record"},
      {"field", "Sample rho(t,r) and u(t,r) on the grid: CSV t,r,rho,u"},
      {"verify", "Finite-difference residual report (JSON)"},
      {"blowup", "Vanishing time of a(t) (JSON)"},
  };

  for (const auto& name : nssol::cli::command_names()) {
    auto& slot = parsed[name];
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", slot.options.config_path, "JSON configuration file")->required();
    sub->add_option("--out", slot.options.out_path, "Output path (default: output.path or stdout)");
    sub->add_option("--format", slot.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--quiet", slot.options.quiet, "Suppress human-readable diagnostics");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return nssol::cli::kConfigError;
  }

  for (const auto& name : nssol::cli::command_names()) {
    CLI::App* sub = app.get_subcommand(name);
    if (!sub->parsed()) continue;
    auto& slot = parsed[name];
    if (slot.format == "csv") slot.options.format = nssol::OutputFormat::Csv;
    if (slot.format == "json") slot.options.format = nssol::OutputFormat::Json;
    return nssol::cli::run(name, slot.options, std::cout, std::cerr);
  }
  return nssol::cli::kConfigError;
}
