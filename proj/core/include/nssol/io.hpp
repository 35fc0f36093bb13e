#ifndef NSSOL_IO_HPP
#define NSSOL_IO_HPP

/**
 * @file io.hpp
 * @brief Run configuration (JSON, strict schema) and report/CSV export.
 *
 * Configuration document:
 * @code{.json}
 * {
 *   "model":   {"N": 3, "gamma": 1.0, "theta": 1.0, "K": 1.0, "kappa": 1.0, "delta": 1},
 *   "family":  {"type": "with_pressure_isothermal", "A": 1, "B": 1, "C": 0, "a0": 1, "a1": 0},
 *   "grid":    {"t_min": 0, "t_max": 1, "n_t": 11, "r_min": 0.01, "r_max": 2, "n_r": 21},
 *   "verify":  {"resolutions": [{"h_t": 1e-3, "h_r": 1e-3}, {"h_t": 5e-4, "h_r": 5e-4}],
 *               "window": {"t_min": 0.1, "t_max": 0.5, "r_min": 0.1, "r_max": 2}, "lattice": 33},
 *   "profile": {"z_max": 10, "dz": 1e-3, "samples": 1001},
 *   "output":  {"format": "csv", "path": ""}
 * }
 * @endcode
 * "model" and "family" are required; the remaining sections and any key
 * inside them fall back to the defaults shown. Unknown keys are rejected.
 */

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "nssol/model.hpp"
#include "nssol/residual.hpp"
#include "nssol/scaling.hpp"

namespace nssol {

struct GridSpec {
  double t_min = 0.0;
  double t_max = 1.0;
  std::size_t n_t = 11;
  double r_min = 0.01;
  double r_max = 2.0;
  std::size_t n_r = 21;

  bool operator==(const GridSpec&) const = default;
};

struct VerifySpec {
  std::vector<StepSizes> resolutions{{1e-3, 1e-3}, {5e-4, 5e-4}};
  Window window{0.1, 0.5, 0.1, 2.0};
  std::size_t lattice = 33;

  bool operator==(const VerifySpec&) const = default;
};

struct ProfileSpec {
  double z_max = 10.0;
  double dz = 1e-3;
  std::size_t samples = 1001;

  bool operator==(const ProfileSpec&) const = default;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  OutputFormat format = OutputFormat::Csv;
  std::string path;  ///< empty = standard output

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  ModelParams model;
  Family family;
  GridSpec grid;
  VerifySpec verify;
  ProfileSpec profile;
  OutputSpec output;

  bool operator==(const RunConfig&) const = default;
};

/// Throws Error(Config) on schema violations (unknown keys, wrong types,
/// missing required keys, unknown family tag).
RunConfig parse_config(const nlohmann::json& document);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

nlohmann::json to_json(const Family& family);
Family parse_family(const nlohmann::json& document);

/// Shortest round-trip text for a double: 17 significant digits.
std::string format_number(double value);

/// Rounds to `digits` significant digits (reports store norms at 12).
double round_significant(double value, int digits);

/// Comma-separated table with one header row and LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

nlohmann::json to_json(const ResidualReport& report);
nlohmann::json to_json(const ValidationOutcome& outcome);

}  // namespace nssol

#endif  // NSSOL_IO_HPP
