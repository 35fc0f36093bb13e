#include "nssol/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nssol/error.hpp"
#include "nssol/ode.hpp"

namespace nssol {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Remaining time to collapse, a / |a'|, below which binary64 time can no
// longer resolve the approach to a = 0.
double time_resolution(double t) { return 1e-13 * std::max(1.0, std::abs(t)); }

std::string state_text(double t, double a, double adot) {
  std::ostringstream out;
  out.precision(17);
  out << "t=" << t << ", a=" << a << ", adot=" << adot;
  return out.str();
}

}  // namespace

const char* to_string(IvpStatus status) noexcept {
  switch (status) {
    case IvpStatus::Completed: return "completed";
    case IvpStatus::Vanished: return "vanished";
    case IvpStatus::Diverged: return "diverged";
  }
  return "unknown";
}

PowerLawScaling powerlaw_scaling(double sigma, double m, double n, double s) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::Domain, "powerlaw_scaling: sigma must be > 0");
  if (!(n > 0.0)) throw Error(ErrorKind::Domain, "powerlaw_scaling: n must be > 0");
  if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorKind::Domain, "powerlaw_scaling: s must lie in (0, 1]");
  if (!std::isfinite(m)) throw Error(ErrorKind::Domain, "powerlaw_scaling: m must be finite");
  return PowerLawScaling{sigma, m, n, s};
}

NumericScaling integrate_scaling(ScalingOde ode, double a0, double a1, double t_end,
                                 const IntegrationOptions& options) {
  if (!(a0 > 0.0)) throw Error(ErrorKind::Domain, "scaling ODE: a0 must be > 0");
  if (!(t_end > 0.0)) throw Error(ErrorKind::Domain, "scaling ODE: t_end must be > 0");
  if (!ode.acceleration) throw Error(ErrorKind::Domain, "scaling ODE: missing right-hand side");

  const double eps_a = options.vanish_fraction * a0;
  const auto& accel = ode.acceleration;
  const auto rhs = [&accel](double, const ode::State<2>& y) {
    return ode::State<2>{y[1], accel(y[0], y[1])};
  };
  const auto collapsed = [eps_a](const ode::Node<2>& node) {
    const double a = node.y[0];
    const double adot = node.y[1];
    if (a <= eps_a) return true;
    return adot < 0.0 && a / -adot < time_resolution(node.t);
  };

  ode::AdaptiveOptions opt;
  opt.rtol = options.rtol;
  opt.atol = options.atol;
  opt.max_step = options.max_step;
  const auto traj = ode::integrate<2>(rhs, 0.0, ode::State<2>{a0, a1}, t_end, opt, collapsed);

  NumericScaling out;
  out.ode = std::move(ode);
  out.a0 = a0;
  out.a1 = a1;
  out.t_end_requested = t_end;
  auto nodes = traj.nodes;

  switch (traj.reason) {
    case ode::StopReason::Completed:
      out.status = IvpStatus::Completed;
      break;
    case ode::StopReason::Event: {
      out.status = IvpStatus::Vanished;
      const auto& last = nodes.back();
      double t_hit = last.t;
      if (last.y[0] <= eps_a && nodes.size() >= 2) {
        // Bisection on the dense output for a(t) = eps_a inside the last step.
        const auto& prev = nodes[nodes.size() - 2];
        double lo = prev.t;
        double hi = last.t;
        for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double a_mid = ode::hermite(prev.t, prev.y[0], prev.dy[0], last.t, last.y[0], last.dy[0], mid)[0];
          (a_mid > eps_a ? lo : hi) = mid;
        }
        t_hit = hi;
        const auto [a_hit, adot_hit] =
            ode::hermite(prev.t, prev.y[0], prev.dy[0], last.t, last.y[0], last.dy[0], t_hit);
        out.vanishing_time = t_hit + (adot_hit < 0.0 ? std::max(a_hit, 0.0) / -adot_hit : 0.0);
        // Keep only nodes with a > eps_a.
        nodes.pop_back();
      } else {
        out.vanishing_time = last.t + last.y[0] / -last.y[1];
      }
      break;
    }
    case ode::StopReason::NonFinite:
      out.status = IvpStatus::Diverged;
      break;
    case ode::StopReason::StepUnderflow:
    case ode::StopReason::MaxSteps: {
      const auto& last = nodes.back();
      if (!std::isfinite(last.y[0]) || !std::isfinite(last.y[1]) || std::abs(last.y[1]) > 1e150) {
        out.status = IvpStatus::Diverged;
        break;
      }
      throw Error(ErrorKind::StepFailure,
                  std::string("scaling ODE: adaptive step control failed (") +
                      (traj.reason == ode::StopReason::MaxSteps ? "step budget exhausted" : "step underflow") +
                      ") at last good state " + state_text(last.t, last.y[0], last.y[1]));
    }
  }

  out.t.reserve(nodes.size());
  out.a.reserve(nodes.size());
  out.adot.reserve(nodes.size());
  out.addot.reserve(nodes.size());
  for (const auto& node : nodes) {
    out.t.push_back(node.t);
    out.a.push_back(node.y[0]);
    out.adot.push_back(node.y[1]);
    out.addot.push_back(node.dy[1]);
  }
  return out;
}

NumericScaling integrate_isothermal(double B, double K, double kappa, int N, double a0, double a1, double t_end,
                                    const IntegrationOptions& options) {
  ScalingOde ode;
  ode.kind = ScalingOdeKind::Isothermal;
  ode.parameters = {{"B", B}, {"K", K}, {"kappa", kappa}, {"N", N}};
  const double pressure = 2.0 * B * K;
  const double viscous = 2.0 * B * N * kappa;
  ode.acceleration = [pressure, viscous](double a, double adot) {
    return -pressure / a + viscous * adot / (a * a);
  };
  return integrate_scaling(std::move(ode), a0, a1, t_end, options);
}

NumericScaling integrate_polytropic(double exponent, double K, double kappa, int N, double a0, double a1,
                                    double t_end, const IntegrationOptions& options) {
  if (!(exponent > 1.0)) throw Error(ErrorKind::Domain, "integrate_polytropic: gamma = theta must be > 1");
  ScalingOde ode;
  ode.kind = ScalingOdeKind::Polytropic;
  ode.parameters = {{"gamma", exponent}, {"theta", exponent}, {"K", K}, {"kappa", kappa}, {"N", N}};
  const double pressure = K * exponent;
  const double viscous = N * kappa * exponent;
  const double p1 = N - exponent * N - 1.0;
  const double p2 = N - exponent * N - 2.0;
  ode.acceleration = [=](double a, double adot) {
    return -pressure * std::pow(a, p1) + viscous * adot * std::pow(a, p2);
  };
  return integrate_scaling(std::move(ode), a0, a1, t_end, options);
}

NumericScaling integrate_pressureless(double theta, double lambda, int N, double a0, double a1, double t_end,
                                      const IntegrationOptions& options) {
  ScalingOde ode;
  ode.parameters = {{"theta", theta}, {"lambda", lambda}, {"N", N}};
  if (theta == 1.0) {
    ode.kind = ScalingOdeKind::PressurelessTheta1;
    ode.acceleration = [lambda](double a, double adot) { return lambda * adot / (a * a); };
  } else {
    ode.kind = ScalingOdeKind::Pressureless;
    const double p = N * theta - N + 2.0;
    ode.acceleration = [lambda, p](double a, double adot) { return -lambda * adot / std::pow(a, p); };
  }
  return integrate_scaling(std::move(ode), a0, a1, t_end, options);
}

ScalingValue evaluate(const ScalingFn& fn, double t) {
  return std::visit(
      Overloaded{
          [t](const PowerLawScaling& p) {
            const double tau = p.m * t + p.n;
            if (!(tau > 0.0)) {
              throw Error(ErrorKind::Domain, "power-law scaling evaluated at t=" + std::to_string(t) +
                                                 " where m t + n <= 0");
            }
            const double a = p.sigma * std::pow(tau, p.s);
            return ScalingValue{a, p.s * p.m * p.sigma * std::pow(tau, p.s - 1.0)};
          },
          [t](const NumericScaling& p) {
            if (p.t.empty() || !(t >= p.t.front() && t <= p.t.back())) {
              throw Error(ErrorKind::Domain,
                          "numeric scaling evaluated at t=" + std::to_string(t) + " outside [" +
                              std::to_string(p.t.empty() ? 0.0 : p.t.front()) + ", " +
                              std::to_string(p.t.empty() ? 0.0 : p.t.back()) + "]");
            }
            if (p.t.size() == 1) return ScalingValue{p.a.front(), p.adot.front()};
            const auto it = std::upper_bound(p.t.begin(), p.t.end(), t);
            std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(it - p.t.begin()), 1, p.t.size() - 1);
            const std::size_t lo = hi - 1;
            const double a = ode::hermite(p.t[lo], p.a[lo], p.adot[lo], p.t[hi], p.a[hi], p.adot[hi], t)[0];
            const double adot =
                ode::hermite(p.t[lo], p.adot[lo], p.addot[lo], p.t[hi], p.adot[hi], p.addot[hi], t)[0];
            return ScalingValue{a, adot};
          },
      },
      fn);
}

std::pair<double, double> time_domain(const ScalingFn& fn) {
  static constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(Overloaded{
                        [](const PowerLawScaling& p) -> std::pair<double, double> {
                          if (p.m > 0.0) return {-p.n / p.m, inf};
                          if (p.m < 0.0) return {-inf, -p.n / p.m};
                          return {-inf, inf};
                        },
                        [](const NumericScaling& p) -> std::pair<double, double> {
                          if (p.t.empty()) return {0.0, 0.0};
                          return {p.t.front(), p.t.back()};
                        },
                    },
                    fn);
}

std::optional<double> vanishing_time(const ScalingFn& fn) {
  return std::visit(Overloaded{
                        [](const PowerLawScaling& p) -> std::optional<double> {
                          if (p.m < 0.0) return -p.n / p.m;
                          return std::nullopt;
                        },
                        [](const NumericScaling& p) -> std::optional<double> {
                          if (p.status == IvpStatus::Vanished) return p.vanishing_time;
                          return std::nullopt;
                        },
                    },
                    fn);
}

}  // namespace nssol
