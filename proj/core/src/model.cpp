#include "nssol/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nssol/error.hpp"

namespace nssol {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= kExponentTolerance * std::max({1.0, std::abs(x), std::abs(y)});
}

std::string describe_value(const char* name, double value) {
  std::ostringstream out;
  out.precision(17);
  out << name << "=" << value;
  return out.str();
}

class Collector {
 public:
  void require(bool holds, std::string constraint, std::string detail) {
    if (!holds) violations_.push_back({std::move(constraint), std::move(detail)});
  }
  std::vector<Violation> take() { return std::move(violations_); }

 private:
  std::vector<Violation> violations_;
};

void check_params(const ModelParams& p, Collector& c) {
  c.require(p.N >= 1, "N >= 1", describe_value("N", p.N));
  c.require(std::isfinite(p.gamma) && p.gamma >= 1.0, "gamma >= 1", describe_value("gamma", p.gamma));
  c.require(std::isfinite(p.theta) && p.theta > 0.0, "theta > 0", describe_value("theta", p.theta));
  c.require(std::isfinite(p.K) && p.K > 0.0, "K > 0", describe_value("K", p.K));
  c.require(std::isfinite(p.kappa) && p.kappa > 0.0, "kappa > 0", describe_value("kappa", p.kappa));
  c.require(p.delta == 0 || p.delta == 1, "delta in {0,1}", describe_value("delta", p.delta));
}

void check_ivp(double a0, double a1, Collector& c) {
  c.require(std::isfinite(a0) && a0 > 0.0, "a0 > 0", describe_value("a0", a0));
  c.require(std::isfinite(a1), "a1 finite", describe_value("a1", a1));
}

void check_delta(const ModelParams& p, int required, Collector& c) {
  c.require(p.delta == required,
            required == 1 ? "delta = 1 required (with pressure)" : "delta = 0 required (pressureless)",
            describe_value("delta", p.delta));
}

}  // namespace

std::string family_tag(const Family& family) {
  return std::visit(Overloaded{
                        [](const IsothermalFamily&) { return "with_pressure_isothermal"; },
                        [](const PolytropicFamily&) { return "with_pressure_polytropic"; },
                        [](const PowerLawFamily&) { return "with_pressure_power_law"; },
                        [](const PressurelessTheta1Family&) { return "pressureless_theta_1"; },
                        [](const PressurelessFamily&) { return "pressureless_theta_not_1"; },
                    },
                    family);
}

std::string family_description(const Family& family) {
  return std::visit(
      Overloaded{
          [](const IsothermalFamily&) {
            return std::string("with pressure, theta = gamma = 1, rho = A exp(B z^2 + C)/a^N");
          },
          [](const PolytropicFamily&) {
            return std::string("with pressure, theta = gamma > 1, rho = y(z)/a^N, y^(theta-2) y' = z");
          },
          [](const PowerLawFamily&) {
            return std::string(
                "with pressure, theta = gamma/2 + 1/2 - 1/N, a(t) = sigma (m t + n)^s, tabulated y(z)");
          },
          [](const PressurelessTheta1Family&) {
            return std::string("pressureless, theta = 1, rho = exp(y(z))/a^N");
          },
          [](const PressurelessFamily& f) {
            return f.shape == ShapeMap::Identity
                       ? std::string("pressureless, theta != 1, rho = y(z)/a^N")
                       : std::string("pressureless, theta != 1, rho = exp(y(z))/a^N (alternative shape)");
          },
      },
      family);
}

int required_delta(const Family& family) {
  return std::holds_alternative<PressurelessTheta1Family>(family) ||
                 std::holds_alternative<PressurelessFamily>(family)
             ? 0
             : 1;
}

double theta_required(int N, double gamma) { return gamma / 2.0 + 0.5 - 1.0 / N; }

double derived_s(const ModelParams& params) {
  const double N = params.N;
  const double denom = params.gamma * N - N + 2.0;
  if (!(denom > 0.0) || params.N < 1) {
    throw Error(ErrorKind::Domain, "derived_s: gamma N - N + 2 must be positive, got " +
                                       describe_value("gamma N - N + 2", denom));
  }
  const double s = 2.0 / denom;
  if (nearly_equal(params.theta, theta_required(params.N, params.gamma))) {
    const double alt = 1.0 / ((params.gamma - params.theta) * N);
    if (!(std::abs(alt - s) <= 1e-12 * s)) {
      throw Error(ErrorKind::Domain, "derived_s: closed forms disagree, " + describe_value("2/(gN-N+2)", s) +
                                         ", " + describe_value("1/((g-t)N)", alt));
    }
  }
  return s;
}

ValidationOutcome validate(const ModelParams& p, const Family& family) {
  Collector c;
  check_params(p, c);
  std::optional<DerivedConstants> derived;

  std::visit(
      Overloaded{
          [&](const IsothermalFamily& f) {
            check_delta(p, 1, c);
            c.require(nearly_equal(p.theta, 1.0) && nearly_equal(p.gamma, 1.0), "theta = gamma = 1 required",
                      describe_value("theta", p.theta) + ", " + describe_value("gamma", p.gamma));
            c.require(std::isfinite(f.A) && f.A >= 0.0, "A >= 0", describe_value("A", f.A));
            c.require(std::isfinite(f.B), "B finite", describe_value("B", f.B));
            c.require(std::isfinite(f.C), "C finite", describe_value("C", f.C));
            check_ivp(f.a0, f.a1, c);
          },
          [&](const PolytropicFamily& f) {
            check_delta(p, 1, c);
            c.require(nearly_equal(p.theta, p.gamma) && p.gamma > 1.0, "theta = gamma > 1 required",
                      describe_value("theta", p.theta) + ", " + describe_value("gamma", p.gamma));
            c.require(std::isfinite(f.alpha) && f.alpha > 0.0, "alpha > 0", describe_value("alpha", f.alpha));
            check_ivp(f.a0, f.a1, c);
          },
          [&](const PowerLawFamily& f) {
            check_delta(p, 1, c);
            c.require(std::isfinite(f.m), "m finite", describe_value("m", f.m));
            c.require(std::isfinite(f.n) && f.n > 0.0, "n > 0", describe_value("n", f.n));
            c.require(std::isfinite(f.sigma) && f.sigma > 0.0, "sigma > 0", describe_value("sigma", f.sigma));
            c.require(std::isfinite(f.alpha) && f.alpha > 0.0, "alpha > 0", describe_value("alpha", f.alpha));
            if (p.N < 1 || !std::isfinite(p.gamma)) return;
            const double required = theta_required(p.N, p.gamma);
            const bool theta_ok = nearly_equal(p.theta, required);
            c.require(theta_ok, "theta = gamma/2 + 1/2 - 1/N required",
                      describe_value("theta", p.theta) + ", " + describe_value("theta_required", required));
            c.require(p.theta >= 1.0 - 1.0 / p.N - kExponentTolerance, "theta >= 1 - 1/N",
                      describe_value("theta", p.theta) + ", " + describe_value("1-1/N", 1.0 - 1.0 / p.N));
            const double denom = p.gamma * p.N - p.N + 2.0;
            if (denom > 0.0) {
              const double s = 2.0 / denom;
              c.require(s > 0.0 && s <= 1.0, "0 < s <= 1", describe_value("s", s));
              derived = DerivedConstants{s, required};
            } else {
              c.require(false, "gamma N - N + 2 > 0", describe_value("gamma N - N + 2", denom));
            }
          },
          [&](const PressurelessTheta1Family& f) {
            check_delta(p, 0, c);
            c.require(nearly_equal(p.theta, 1.0), "theta = 1 required", describe_value("theta", p.theta));
            c.require(std::isfinite(f.lambda), "lambda finite", describe_value("lambda", f.lambda));
            c.require(std::isfinite(f.alpha), "alpha finite", describe_value("alpha", f.alpha));
            check_ivp(f.a0, f.a1, c);
          },
          [&](const PressurelessFamily& f) {
            check_delta(p, 0, c);
            c.require(!nearly_equal(p.theta, 1.0), "theta != 1 required", describe_value("theta", p.theta));
            c.require(std::isfinite(f.lambda), "lambda finite", describe_value("lambda", f.lambda));
            c.require(std::isfinite(f.alpha) && f.alpha > 0.0, "alpha > 0", describe_value("alpha", f.alpha));
            check_ivp(f.a0, f.a1, c);
          },
      },
      family);

  return ValidationOutcome{c.take(), derived};
}

ValidationOutcome require_valid(const ModelParams& params, const Family& family) {
  ValidationOutcome outcome = validate(params, family);
  if (!outcome.ok()) {
    std::string message = family_tag(family) + ": invalid parameters";
    for (const auto& v : outcome.violations) message += "; " + v.constraint + " (" + v.detail + ")";
    throw Error(ErrorKind::Validation, message);
  }
  return outcome;
}

}  // namespace nssol
