#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "nssol/error.hpp"
#include "nssol/fields.hpp"
#include "nssol/profiles.hpp"
#include "nssol/residual.hpp"
#include "nssol/scaling.hpp"

namespace nssol::cli {
namespace {

using nlohmann::json;

// Primary output: the configured file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(ErrorKind::Config, "cannot open output file \"" + path + "\"");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool is_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> v;
  if (count == 0) return v;
  v.reserve(count);
  if (count == 1) {
    v.push_back(lo);
    return v;
  }
  for (std::size_t i = 0; i < count; ++i) {
    v.push_back(i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return v;
}

json number_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void require_valid_config(const RunConfig& config) {
  const ValidationOutcome outcome = validate(config.model, config.family);
  if (!outcome.ok()) require_valid(config.model, config.family);
}

void check_time_grid(const GridSpec& grid) {
  if (grid.n_t == 0) throw Error(ErrorKind::Config, "grid.n_t must be >= 1");
  if (!(grid.t_max >= grid.t_min)) throw Error(ErrorKind::Config, "grid.t_max must be >= grid.t_min");
  if (grid.n_t > 1 && !(grid.t_max > grid.t_min)) {
    throw Error(ErrorKind::Config, "grid.t_max must exceed grid.t_min when n_t > 1");
  }
}

bool numeric_scaling(const Family& family) { return !std::holds_alternative<PowerLawFamily>(family); }

double scaling_horizon(const RunConfig& config) {
  if (numeric_scaling(config.family) && !(config.grid.t_min >= 0.0)) {
    throw Error(ErrorKind::Config, "grid.t_min must be >= 0 for families with an integrated a(t)");
  }
  return std::max(config.grid.t_max, 1e-12);
}

TabulationOptions tabulation_options(const ProfileSpec& spec) {
  TabulationOptions opt;
  opt.z_max = spec.z_max;
  opt.dz = spec.dz;
  return opt;
}

const char* truncation_name(Truncation t) {
  switch (t) {
    case Truncation::None: return "none";
    case Truncation::SingularCoefficient: return "singular_coefficient";
    case Truncation::Vacuum: return "vacuum";
  }
  return "none";
}

// ---------------------------------------------------------------------------

int cmd_describe(const RunConfig& config, const Options& options, std::ostream& out, std::ostream& err) {
  const ModelParams& p = config.model;
  const ValidationOutcome outcome = validate(p, config.family);

  json summary;
  summary["family"] = family_tag(config.family);
  summary["description"] = family_description(config.family);
  summary["valid"] = outcome.ok();
  summary["violations"] = to_json(outcome)["violations"];
  summary["model"] = to_json(config)["model"];
  summary["theta_required"] = p.N >= 1 ? json(theta_required(p.N, p.gamma)) : json(nullptr);
  try {
    summary["s"] = derived_s(p);
  } catch (const Error&) {
    summary["s"] = nullptr;
  }
  if (const auto* pl = std::get_if<PowerLawFamily>(&config.family)) {
    summary["vanishing_time"] = pl->m < 0.0 ? json(-pl->n / pl->m) : json(nullptr);
    if (pl->m < 0.0) {
      summary["vanishing_time_note"] =
          "a(t) = sigma (m t + n)^s vanishes at the root t* = -n/m of m t + n; the value -m/n "
          "(reported as vanishing_time_alternative) coincides only when m^2 = n^2";
      summary["vanishing_time_alternative"] = -pl->m / pl->n;
    }
  }

  if (!options.quiet) {
    err << "family: " << family_tag(config.family) << " (" << family_description(config.family) << ")\n";
    err << "valid: " << (outcome.ok() ? "yes" : "no") << "\n";
    for (const auto& v : outcome.violations) err << "  violation: " << v.constraint << " [" << v.detail << "]\n";
    if (!summary["s"].is_null()) err << "s = 2/(gamma N - N + 2) = " << format_number(summary["s"].get<double>()) << "\n";
    if (!summary["theta_required"].is_null()) {
      err << "theta_required = gamma/2 + 1/2 - 1/N = " << format_number(summary["theta_required"].get<double>())
          << "\n";
    }
    if (summary.contains("vanishing_time") && !summary["vanishing_time"].is_null()) {
      err << "vanishing time t* = -n/m = " << format_number(summary["vanishing_time"].get<double>())
          << " (alternative reading -m/n = "
          << format_number(summary["vanishing_time_alternative"].get<double>()) << ")\n";
    }
  }

  Sink sink(options.out_path.empty() ? config.output.path : options.out_path, out);
  sink.stream() << summary.dump(2) << '\n';
  if (!outcome.ok()) {
    require_valid(p, config.family);  // throws the validation error
  }
  return kOk;
}

int cmd_profile(const RunConfig& config, const Options& options, std::ostream& out, std::ostream& err) {
  require_valid_config(config);
  if (config.profile.samples == 0) throw Error(ErrorKind::Config, "profile.samples must be >= 1");
  if (!(config.profile.z_max >= 0.0)) throw Error(ErrorKind::Config, "profile.z_max must be >= 0");
  const DensityShape shape = make_shape(config.model, config.family, tabulation_options(config.profile));

  double z_hi = config.profile.z_max;
  std::string truncation = "none";
  if (const auto* tab = std::get_if<Tabulated>(&shape.profile)) {
    truncation = truncation_name(tab->truncation);
    if (tab->truncated()) {
      z_hi = std::min(z_hi, tab->z_end());
      if (!options.quiet) {
        err << "warning: profile table truncated at z=" << format_number(tab->z_end()) << " (" << truncation
            << ")\n";
      }
    }
  }
  const auto z_values = linspace(0.0, z_hi, config.profile.samples);

  const OutputFormat format = options.format.value_or(config.output.format);
  Sink sink(options.out_path.empty() ? config.output.path : options.out_path, out);
  if (format == OutputFormat::Csv) {
    CsvWriter csv(sink.stream(), {"z", "y", "dy"});
    for (double z : z_values) {
      const auto v = evaluate(shape.profile, z);
      csv.row({z, v.y, v.dy});
    }
  } else {
    json doc{{"family", family_tag(config.family)}, {"truncation", truncation}};
    json z = json::array(), y = json::array(), dy = json::array();
    for (double zz : z_values) {
      const auto v = evaluate(shape.profile, zz);
      z.push_back(zz);
      y.push_back(v.y);
      dy.push_back(v.dy);
    }
    doc["z"] = z;
    doc["y"] = y;
    doc["dy"] = dy;
    sink.stream() << doc.dump(2) << '\n';
  }
  return kOk;
}

json scaling_status(const ScalingFn& fn) {
  json status;
  if (const auto* num = std::get_if<NumericScaling>(&fn)) {
    status["status"] = to_string(num->status);
    status["t_end"] = num->t.empty() ? 0.0 : num->t.back();
  } else {
    status["status"] = "closed_form";
  }
  status["vanishing_time"] = number_or_null(vanishing_time(fn));
  return status;
}

int cmd_scale(const RunConfig& config, const Options& options, std::ostream& out, std::ostream& err) {
  require_valid_config(config);
  check_time_grid(config.grid);
  const ScalingFn fn = make_scaling(config.model, config.family, scaling_horizon(config));
  const auto [lo, hi] = time_domain(fn);
  const auto t_values = linspace(config.grid.t_min, config.grid.t_max, config.grid.n_t);
  const json status = scaling_status(fn);

  const OutputFormat format = options.format.value_or(config.output.format);
  Sink sink(options.out_path.empty() ? config.output.path : options.out_path, out);
  if (format == OutputFormat::Csv) {
    CsvWriter csv(sink.stream(), {"t", "a", "adot"});
    for (double t : t_values) {
      if (!(t >= lo && t <= hi)) continue;
      const auto v = evaluate(fn, t);
      csv.row({t, v.a, v.adot});
    }
    (sink.is_file() ? out : err) << status.dump() << '\n';
  } else {
    json doc = status;
    json samples = json::array();
    for (double t : t_values) {
      if (!(t >= lo && t <= hi)) continue;
      const auto v = evaluate(fn, t);
      samples.push_back({{"t", t}, {"a", v.a}, {"adot", v.adot}});
    }
    doc["samples"] = samples;
    sink.stream() << doc.dump(2) << '\n';
  }
  return kOk;
}

int cmd_field(const RunConfig& config, const Options& options, std::ostream& out, std::ostream&) {
  if (!(config.grid.r_min > 0.0)) throw Error(ErrorKind::Config, "r_min must be > 0");
  if (config.grid.n_r == 0) throw Error(ErrorKind::Config, "grid.n_r must be >= 1");
  if (!(config.grid.r_max >= config.grid.r_min)) throw Error(ErrorKind::Config, "grid.r_max must be >= grid.r_min");
  check_time_grid(config.grid);
  require_valid_config(config);

  SolutionOptions sol;
  sol.tabulation = tabulation_options(config.profile);
  const SelfSimilarSolution solution = make_solution(config.model, config.family, scaling_horizon(config), sol);
  const FieldGrid grid = solution.grid(linspace(config.grid.t_min, config.grid.t_max, config.grid.n_t),
                                       linspace(config.grid.r_min, config.grid.r_max, config.grid.n_r));

  const OutputFormat format = options.format.value_or(config.output.format);
  Sink sink(options.out_path.empty() ? config.output.path : options.out_path, out);
  if (format == OutputFormat::Csv) {
    CsvWriter csv(sink.stream(), {"t", "r", "rho", "u"});
    for (std::size_t i = 0; i < grid.t_values.size(); ++i) {
      for (std::size_t j = 0; j < grid.r_values.size(); ++j) {
        csv.row({grid.t_values[i], grid.r_values[j], grid.rho_at(i, j), grid.u_at(i, j)});
      }
    }
  } else {
    json doc{{"family", family_tag(config.family)}, {"t", grid.t_values}, {"r", grid.r_values}};
    doc["rho"] = grid.rho;
    doc["u"] = grid.u;
    sink.stream() << doc.dump(2) << '\n';
  }
  return kOk;
}

int cmd_verify(const RunConfig& config, const Options& options, std::ostream& out, std::ostream& err) {
  require_valid_config(config);
  VerifyOptions vopt;
  vopt.lattice = config.verify.lattice;
  SolutionOptions sol;
  sol.tabulation = tabulation_options(config.profile);
  const ResidualReport report =
      verify_solution(config.model, config.family, config.verify.window, config.verify.resolutions, vopt, sol);

  json doc = to_json(report);
  doc["family"] = family_tag(config.family);
  if (!options.quiet) {
    err << "mass_linf=" << format_number(doc["mass_linf"].get<double>())
        << " mom_linf=" << format_number(doc["mom_linf"].get<double>()) << "\n";
  }
  Sink sink(options.out_path.empty() ? config.output.path : options.out_path, out);
  sink.stream() << doc.dump(2) << '\n';
  return kOk;
}

int cmd_blowup(const RunConfig& config, const Options& options, std::ostream& out, std::ostream&) {
  require_valid_config(config);
  json doc{{"family", family_tag(config.family)}};
  if (const auto* pl = std::get_if<PowerLawFamily>(&config.family)) {
    doc["source"] = "closed_form";
    doc["vanishing_time"] = pl->m < 0.0 ? json(-pl->n / pl->m) : json(nullptr);
  } else {
    check_time_grid(config.grid);
    const ScalingFn fn = make_scaling(config.model, config.family, scaling_horizon(config));
    doc["source"] = "integration";
    doc.update(scaling_status(fn));
  }
  Sink sink(options.out_path.empty() ? config.output.path : options.out_path, out);
  sink.stream() << doc.dump(2) << '\n';
  return kOk;
}

using Handler = std::function<int(const RunConfig&, const Options&, std::ostream&, std::ostream&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"describe", cmd_describe}, {"profile", cmd_profile}, {"scale", cmd_scale},
      {"field", cmd_field},       {"verify", cmd_verify},   {"blowup", cmd_blowup},
  };
  return table;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"describe", "profile", "scale", "field", "verify", "blowup"};
  return names;
}

int run(const std::string& command, const RunConfig& config, const Options& options, std::ostream& out,
        std::ostream& err) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) {
    report_error(err, "config", "unknown command \"" + command + "\"");
    return kConfigError;
  }
  try {
    return it->second(config, options, out, err);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return e.is_input_error() ? kConfigError : kRuntimeError;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kRuntimeError;
  }
}

int run(const std::string& command, const Options& options, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(options.config_path);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return kConfigError;
  }
  return run(command, config, options, out, err);
}

}  // namespace nssol::cli
