#include "nssol/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

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

ProfileValue evaluate_power_root(const PowerRoot& p, double z) {
  const double radicand = p.radicand(z);
  if (!(radicand > 0.0)) return {0.0, 0.0};
  const double inv = 1.0 / (p.n_exp + 1.0);
  const double y = std::pow(radicand, inv);
  // y' = xi z R^(1/(n+1) - 1) = xi z y / R
  return {y, p.xi * z * y / radicand};
}

ProfileValue evaluate_table(const Tabulated& tab, double z) {
  if (tab.z.empty()) throw Error(ErrorKind::OutOfRange, "tabulated profile is empty");
  const double z_end = tab.z.back();
  if (z > z_end * (1.0 + 1e-14) + 1e-300) {
    throw Error(ErrorKind::OutOfRange, "tabulated profile evaluated at z=" + std::to_string(z) +
                                           " beyond its end z=" + std::to_string(z_end));
  }
  if (tab.z.size() == 1) return {tab.y.front(), tab.dy.front()};
  const auto it = std::upper_bound(tab.z.begin(), tab.z.end(), z);
  std::size_t hi = static_cast<std::size_t>(it - tab.z.begin());
  hi = std::clamp<std::size_t>(hi, 1, tab.z.size() - 1);
  const std::size_t lo = hi - 1;
  const auto [y, dy] = ode::hermite(tab.z[lo], tab.y[lo], tab.dy[lo], tab.z[hi], tab.y[hi], tab.dy[hi],
                                    std::min(z, z_end));
  return {y, dy};
}

}  // namespace

double PowerRoot::radicand(double z) const {
  const double np1 = n_exp + 1.0;
  return 0.5 * np1 * xi * z * z + std::pow(alpha, np1);
}

double PowerLawProfileOde::bracket(double y) const {
  return pressure_coeff * std::pow(y, gamma - 2.0) - viscous_coeff * std::pow(y, theta - 2.0);
}

double PowerLawProfileOde::slope(double z, double y) const {
  if (!(y > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double rhs = rhs_coeff * z;
  if (rhs == 0.0) return 0.0;
  return rhs / bracket(y);
}

PowerRoot power_root_profile(double n_exp, double xi, double alpha) {
  if (n_exp == -1.0) throw Error(ErrorKind::Domain, "power_root_profile: n = -1 is excluded");
  if (!(alpha > 0.0)) throw Error(ErrorKind::Domain, "power_root_profile: alpha must be positive");
  if (!std::isfinite(n_exp) || !std::isfinite(xi) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::Domain, "power_root_profile: non-finite argument");
  }
  return PowerRoot{n_exp, xi, alpha};
}

ExpQuadratic isothermal_profile(double A, double B, double C) {
  if (!(A >= 0.0)) throw Error(ErrorKind::Domain, "isothermal_profile: A must be >= 0");
  return ExpQuadratic{A, B, C};
}

PowerRoot polytropic_profile(double theta, double alpha) {
  if (!(theta > 1.0)) throw Error(ErrorKind::Domain, "polytropic_profile: theta must be > 1");
  return power_root_profile(theta - 2.0, 1.0, alpha);
}

ExpQuadratic pressureless_theta1_profile(double lambda, double kappa, int N, double alpha) {
  return ExpQuadratic{1.0, lambda / (2.0 * N * kappa), alpha};
}

PowerRoot pressureless_profile(double theta, double lambda, double kappa, int N, double alpha) {
  if (theta == 1.0) throw Error(ErrorKind::Domain, "pressureless_profile: theta = 1 has its own profile");
  return power_root_profile(theta - 2.0, -lambda / (N * kappa * theta), alpha);
}

Tabulated powerlaw_profile(const ModelParams& params, double m, double /*n*/, double sigma, double alpha,
                           double s, const TabulationOptions& options) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::Domain, "powerlaw_profile: alpha must be positive");
  if (!(sigma > 0.0)) throw Error(ErrorKind::Domain, "powerlaw_profile: sigma must be positive");
  if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorKind::Domain, "powerlaw_profile: s must lie in (0, 1]");
  if (!(options.dz > 0.0) || !(options.z_max >= 0.0)) {
    throw Error(ErrorKind::Domain, "powerlaw_profile: need dz > 0 and z_max >= 0");
  }

  const double N = params.N;
  PowerLawProfileOde ode;
  ode.gamma = params.gamma;
  ode.theta = params.theta;
  ode.pressure_coeff = params.K * params.gamma / (s * std::pow(sigma, params.gamma * N + 1.0));
  ode.viscous_coeff = m * N * params.kappa * params.theta / std::pow(sigma, params.theta * N + 1.0);
  ode.rhs_coeff = (1.0 - s) * m * m / std::pow(sigma, N - 1.0);

  Tabulated tab;
  tab.z_max = options.z_max;
  tab.ode = ode;

  const auto intervals = static_cast<std::size_t>(std::llround(std::ceil(options.z_max / options.dz - 1e-9)));
  tab.z.reserve(intervals + 1);
  tab.y.reserve(intervals + 1);
  tab.dy.reserve(intervals + 1);

  const double c0 = std::abs(ode.bracket(alpha));
  const double guard = options.singular_tolerance * c0;
  tab.z.push_back(0.0);
  tab.y.push_back(alpha);
  tab.dy.push_back(0.0);
  if (!(c0 > 0.0) || !std::isfinite(c0)) {
    tab.truncation = Truncation::SingularCoefficient;
    return tab;
  }

  ode::AdaptiveOptions opt;
  opt.rtol = options.rtol;
  opt.atol = options.atol;
  opt.max_step = options.dz;

  const auto rhs = [&ode](double z, const ode::State<1>& y) { return ode::State<1>{ode.slope(z, y[0])}; };
  const auto bad = [&](double y) { return !(y > 0.0) || !(std::abs(ode.bracket(y)) >= guard); };

  for (std::size_t i = 0; i < intervals; ++i) {
    const double z0 = tab.z.back();
    const double z1 = std::min(options.z_max, static_cast<double>(i + 1) * options.dz);
    const auto traj = ode::integrate<1>(rhs, z0, ode::State<1>{tab.y.back()}, z1, opt,
                                        [&](const ode::Node<1>& node) { return bad(node.y[0]); });
    if (traj.reason != ode::StopReason::Completed) {
      const double y_last = traj.nodes.back().y[0];
      const bool vacuum = !(y_last > 1e-6 * alpha) && std::abs(ode.bracket(std::max(y_last, 0.0))) >= guard;
      tab.truncation = vacuum ? Truncation::Vacuum : Truncation::SingularCoefficient;
      return tab;
    }
    const double y1 = traj.nodes.back().y[0];
    tab.z.push_back(z1);
    tab.y.push_back(y1);
    tab.dy.push_back(ode.slope(z1, y1));
  }
  return tab;
}

ProfileValue evaluate(const Profile& profile, double z) {
  const double sign = z < 0.0 ? -1.0 : 1.0;
  const double az = std::abs(z);
  ProfileValue v = std::visit(Overloaded{
                                  [az](const ExpQuadratic& p) {
                                    if (p.A == 0.0) return ProfileValue{0.0, 0.0};
                                    const double y = p.A * std::exp(p.B * az * az + p.C);
                                    return ProfileValue{y, 2.0 * p.B * az * y};
                                  },
                                  [az](const PowerRoot& p) { return evaluate_power_root(p, az); },
                                  [az](const Tabulated& p) { return evaluate_table(p, az); },
                              },
                              profile);
  v.dy *= sign;
  return v;
}

std::optional<double> support_radius(const Profile& profile) {
  return std::visit(Overloaded{
                        [](const ExpQuadratic& p) -> std::optional<double> {
                          if (p.A == 0.0) return 0.0;
                          return std::nullopt;
                        },
                        [](const PowerRoot& p) -> std::optional<double> {
                          if (!((p.n_exp + 1.0) * p.xi < 0.0)) return std::nullopt;
                          double lo = 0.0;
                          double hi = 1.0;
                          while (p.radicand(hi) > 0.0) hi *= 2.0;
                          while (hi - lo > 1e-12 * std::max(1.0, hi)) {
                            const double mid = 0.5 * (lo + hi);
                            (p.radicand(mid) > 0.0 ? lo : hi) = mid;
                          }
                          return 0.5 * (lo + hi);
                        },
                        [](const Tabulated& p) -> std::optional<double> {
                          if (p.truncation == Truncation::Vacuum) return p.z_end();
                          return std::nullopt;
                        },
                    },
                    profile);
}

double center_value(const Profile& profile) { return evaluate(profile, 0.0).y; }

}  // namespace nssol
