#include "nssol/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>

#include "nssol/error.hpp"

namespace nssol {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void config_error(const std::string& message) { throw Error(ErrorKind::Config, message); }

// Strict view of a JSON object: every key must be consumed.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) config_error(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) config_error(where(key) + ": expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  long long integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) config_error(where(key) + ": expected an integer");
    return v.get<long long>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const long long v = integer(key);
    if (v < 0) config_error(where(key) + ": expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) config_error(where(key) + ": expected a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  const json& child(const std::string& key) { return at(key); }

  std::string where(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& item : node_.items()) {
      if (!seen_.count(item.key())) config_error(where(item.key()) + ": unknown key");
    }
  }

 private:
  const json& at(const std::string& key) {
    if (!node_.contains(key)) config_error(where(key) + ": required key is missing");
    seen_.insert(key);
    return node_.at(key);
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

ModelParams parse_model(const json& node) {
  ObjectReader r(node, "model");
  ModelParams p;
  p.N = static_cast<int>(r.integer("N"));
  p.gamma = r.number("gamma");
  p.theta = r.number("theta");
  p.K = r.number("K");
  p.kappa = r.number("kappa");
  p.delta = static_cast<int>(r.integer("delta"));
  r.finish();
  return p;
}

json model_json(const ModelParams& p) {
  return json{{"N", p.N}, {"gamma", p.gamma}, {"theta", p.theta}, {"K", p.K}, {"kappa", p.kappa}, {"delta", p.delta}};
}

GridSpec parse_grid(const json& node) {
  ObjectReader r(node, "grid");
  GridSpec g;
  g.t_min = r.number("t_min", g.t_min);
  g.t_max = r.number("t_max", g.t_max);
  g.n_t = r.count("n_t", g.n_t);
  g.r_min = r.number("r_min", g.r_min);
  g.r_max = r.number("r_max", g.r_max);
  g.n_r = r.count("n_r", g.n_r);
  r.finish();
  return g;
}

Window parse_window(const json& node, const Window& fallback) {
  ObjectReader r(node, "verify.window");
  Window w;
  w.t_min = r.number("t_min", fallback.t_min);
  w.t_max = r.number("t_max", fallback.t_max);
  w.r_min = r.number("r_min", fallback.r_min);
  w.r_max = r.number("r_max", fallback.r_max);
  r.finish();
  return w;
}

VerifySpec parse_verify(const json& node) {
  ObjectReader r(node, "verify");
  VerifySpec v;
  if (r.has("resolutions")) {
    const json& list = r.child("resolutions");
    if (!list.is_array() || list.empty()) config_error("verify.resolutions: expected a non-empty array");
    v.resolutions.clear();
    for (const auto& entry : list) {
      ObjectReader e(entry, "verify.resolutions[]");
      v.resolutions.push_back({e.number("h_t"), e.number("h_r")});
      e.finish();
    }
  }
  if (r.has("window")) v.window = parse_window(r.child("window"), v.window);
  v.lattice = r.count("lattice", v.lattice);
  r.finish();
  return v;
}

ProfileSpec parse_profile(const json& node) {
  ObjectReader r(node, "profile");
  ProfileSpec p;
  p.z_max = r.number("z_max", p.z_max);
  p.dz = r.number("dz", p.dz);
  p.samples = r.count("samples", p.samples);
  r.finish();
  return p;
}

OutputSpec parse_output(const json& node) {
  ObjectReader r(node, "output");
  OutputSpec o;
  const std::string format = r.string("format", "csv");
  if (format == "csv") {
    o.format = OutputFormat::Csv;
  } else if (format == "json") {
    o.format = OutputFormat::Json;
  } else {
    config_error("output.format: expected \"csv\" or \"json\", got \"" + format + "\"");
  }
  o.path = r.string("path", "");
  r.finish();
  return o;
}

}  // namespace

Family parse_family(const json& node) {
  ObjectReader r(node, "family");
  const std::string type = r.string("type");
  Family family;
  if (type == "with_pressure_isothermal") {
    IsothermalFamily f;
    f.A = r.number("A");
    f.B = r.number("B");
    f.C = r.number("C");
    f.a0 = r.number("a0", f.a0);
    f.a1 = r.number("a1", f.a1);
    family = f;
  } else if (type == "with_pressure_polytropic") {
    PolytropicFamily f;
    f.alpha = r.number("alpha");
    f.a0 = r.number("a0", f.a0);
    f.a1 = r.number("a1", f.a1);
    family = f;
  } else if (type == "with_pressure_power_law") {
    PowerLawFamily f;
    f.m = r.number("m");
    f.n = r.number("n");
    f.sigma = r.number("sigma");
    f.alpha = r.number("alpha");
    family = f;
  } else if (type == "pressureless_theta_1") {
    PressurelessTheta1Family f;
    f.lambda = r.number("lambda");
    f.alpha = r.number("alpha");
    f.a0 = r.number("a0", f.a0);
    f.a1 = r.number("a1", f.a1);
    family = f;
  } else if (type == "pressureless_theta_not_1") {
    PressurelessFamily f;
    f.lambda = r.number("lambda");
    f.alpha = r.number("alpha");
    f.a0 = r.number("a0", f.a0);
    f.a1 = r.number("a1", f.a1);
    const std::string shape = r.string("shape", "linear");
    if (shape == "linear") {
      f.shape = ShapeMap::Identity;
    } else if (shape == "exponential") {
      f.shape = ShapeMap::Exponential;
    } else {
      config_error("family.shape: expected \"linear\" or \"exponential\", got \"" + shape + "\"");
    }
    family = f;
  } else {
    config_error("family.type: unknown family \"" + type + "\"");
  }
  r.finish();
  return family;
}

json to_json(const Family& family) {
  json out = std::visit(
      Overloaded{
          [](const IsothermalFamily& f) {
            return json{{"A", f.A}, {"B", f.B}, {"C", f.C}, {"a0", f.a0}, {"a1", f.a1}};
          },
          [](const PolytropicFamily& f) { return json{{"alpha", f.alpha}, {"a0", f.a0}, {"a1", f.a1}}; },
          [](const PowerLawFamily& f) {
            return json{{"m", f.m}, {"n", f.n}, {"sigma", f.sigma}, {"alpha", f.alpha}};
          },
          [](const PressurelessTheta1Family& f) {
            return json{{"lambda", f.lambda}, {"alpha", f.alpha}, {"a0", f.a0}, {"a1", f.a1}};
          },
          [](const PressurelessFamily& f) {
            return json{{"lambda", f.lambda},
                        {"alpha", f.alpha},
                        {"a0", f.a0},
                        {"a1", f.a1},
                        {"shape", f.shape == ShapeMap::Identity ? "linear" : "exponential"}};
          },
      },
      family);
  out["type"] = family_tag(family);
  return out;
}

RunConfig parse_config(const json& document) {
  ObjectReader r(document, "config");
  RunConfig config;
  config.model = parse_model(r.child("model"));
  config.family = parse_family(r.child("family"));
  if (r.has("grid")) config.grid = parse_grid(r.child("grid"));
  if (r.has("verify")) config.verify = parse_verify(r.child("verify"));
  if (r.has("profile")) config.profile = parse_profile(r.child("profile"));
  if (r.has("output")) config.output = parse_output(r.child("output"));
  r.finish();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file \"" + path + "\"");
  json document;
  try {
    in >> document;
  } catch (const json::parse_error& e) {
    config_error("config file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return parse_config(document);
}

json to_json(const RunConfig& c) {
  json resolutions = json::array();
  for (const auto& h : c.verify.resolutions) resolutions.push_back({{"h_t", h.h_t}, {"h_r", h.h_r}});
  return json{
      {"model", model_json(c.model)},
      {"family", to_json(c.family)},
      {"grid",
       {{"t_min", c.grid.t_min},
        {"t_max", c.grid.t_max},
        {"n_t", c.grid.n_t},
        {"r_min", c.grid.r_min},
        {"r_max", c.grid.r_max},
        {"n_r", c.grid.n_r}}},
      {"verify",
       {{"resolutions", resolutions},
        {"window",
         {{"t_min", c.verify.window.t_min},
          {"t_max", c.verify.window.t_max},
          {"r_min", c.verify.window.r_min},
          {"r_max", c.verify.window.r_max}}},
        {"lattice", c.verify.lattice}}},
      {"profile", {{"z_max", c.profile.z_max}, {"dz", c.profile.dz}, {"samples", c.profile.samples}}},
      {"output",
       {{"format", c.output.format == OutputFormat::Csv ? "csv" : "json"}, {"path", c.output.path}}},
  };
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw Error(ErrorKind::Domain, "CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
}

json to_json(const ResidualReport& report) {
  const auto norm = [](double v) { return round_significant(v, 12); };
  const auto order = [&](const std::optional<double>& o) { return o ? json(norm(*o)) : json(nullptr); };

  json levels = json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"h_t", l.h_t},
                      {"h_r", l.h_r},
                      {"mass_linf", norm(l.mass_linf)},
                      {"mass_l2", norm(l.mass_l2)},
                      {"mom_linf", norm(l.mom_linf)},
                      {"mom_l2", norm(l.mom_l2)},
                      {"lattice_points", l.lattice_points},
                      {"mass_skipped", l.mass_skipped},
                      {"mom_skipped", l.mom_skipped}});
  }
  json out{
      {"window",
       {{"t_min", report.window.t_min},
        {"t_max", report.window.t_max},
        {"r_min", report.window.r_min},
        {"r_max", report.window.r_max}}},
      {"lattice", report.lattice},
      {"order_mass", order(report.order_mass())},
      {"order_mom", order(report.order_mom())},
      {"levels", levels},
  };
  if (!report.levels.empty()) {
    const auto& first = report.levels.front();
    out["h_t"] = first.h_t;
    out["h_r"] = first.h_r;
    out["mass_linf"] = norm(first.mass_linf);
    out["mass_l2"] = norm(first.mass_l2);
    out["mom_linf"] = norm(first.mom_linf);
    out["mom_l2"] = norm(first.mom_l2);
  }
  return out;
}

json to_json(const ValidationOutcome& outcome) {
  json violations = json::array();
  for (const auto& v : outcome.violations) violations.push_back({{"constraint", v.constraint}, {"detail", v.detail}});
  json out{{"ok", outcome.ok()}, {"violations", violations}};
  if (outcome.derived) {
    out["s"] = outcome.derived->s;
    out["theta_required"] = outcome.derived->theta_required;
  }
  return out;
}

}  // namespace nssol
