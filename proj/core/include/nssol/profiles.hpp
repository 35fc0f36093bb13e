#ifndef NSSOL_PROFILES_HPP
#define NSSOL_PROFILES_HPP

/**
 * @file profiles.hpp
 * @brief Self-similar density profiles y(z), z = r / a(t).
 *
 * Three representations cover every family:
 *  - ExpQuadratic  A exp(B z^2 + C)
 *  - PowerRoot     ((n+1)/2 xi z^2 + alpha^(n+1))^(1/(n+1)), the closed-form
 *                  solution of y' y^n = xi z, y(0) = alpha; vacuum (0) where the
 *                  radicand is not positive
 *  - Tabulated     numerically integrated profile ODE sampled on a uniform
 *                  z-grid with cubic Hermite interpolation
 */

#include <optional>
#include <variant>
#include <vector>

#include "nssol/model.hpp"

namespace nssol {

struct ExpQuadratic {
  double A = 1.0;
  double B = 0.0;
  double C = 0.0;
};

struct PowerRoot {
  double n_exp = 0.0;
  double xi = 1.0;
  double alpha = 1.0;

  /// (n+1)/2 xi z^2 + alpha^(n+1)
  double radicand(double z) const;
};

/// Why a tabulated profile stops short of z_max.
enum class Truncation {
  None,
  SingularCoefficient,  ///< the bracket multiplying y' vanished
  Vacuum,               ///< y reached zero
};

/// Coefficients of c(y) y' = rhs_coeff z with
/// c(y) = pressure_coeff y^(gamma-2) - viscous_coeff y^(theta-2).
struct PowerLawProfileOde {
  double gamma = 1.0;
  double theta = 1.0;
  double pressure_coeff = 0.0;  ///< K gamma / (s sigma^(gamma N + 1))
  double viscous_coeff = 0.0;   ///< m N kappa theta / sigma^(theta N + 1)
  double rhs_coeff = 0.0;       ///< (1 - s) m^2 / sigma^(N - 1)

  double bracket(double y) const;
  /// y' at (z, y).
  double slope(double z, double y) const;
};

struct Tabulated {
  std::vector<double> z;   ///< uniform, z.front() == 0
  std::vector<double> y;   ///< y.front() == alpha
  std::vector<double> dy;  ///< y' from the ODE at each node
  double z_max = 0.0;      ///< requested extent
  Truncation truncation = Truncation::None;
  PowerLawProfileOde ode;

  /// Last z covered by the table.
  double z_end() const { return z.empty() ? 0.0 : z.back(); }
  bool truncated() const { return truncation != Truncation::None; }
};

using Profile = std::variant<ExpQuadratic, PowerRoot, Tabulated>;

struct ProfileValue {
  double y = 0.0;
  double dy = 0.0;
};

/// Closed-form solution of y' y^n = xi z, y(0) = alpha. Rejects n = -1 and
/// alpha <= 0 with Error(Domain).
PowerRoot power_root_profile(double n_exp, double xi, double alpha);

/// A exp(B z^2 + C), A >= 0.
ExpQuadratic isothermal_profile(double A, double B, double C);

/// theta > 1: PowerRoot with n = theta - 2, xi = 1.
PowerRoot polytropic_profile(double theta, double alpha);

/// theta = 1 pressureless profile exp(lambda z^2 / (2 N kappa) + alpha).
ExpQuadratic pressureless_theta1_profile(double lambda, double kappa, int N, double alpha);

/// theta != 1 pressureless profile, PowerRoot with n = theta - 2 and
/// xi = -lambda / (N kappa theta).
PowerRoot pressureless_profile(double theta, double lambda, double kappa, int N, double alpha);

struct TabulationOptions {
  double z_max = 10.0;
  double dz = 1e-3;
  double singular_tolerance = 1e-10;  ///< relative to |c(alpha)|
  double rtol = 1e-10;
  double atol = 1e-12;
};

/**
 * Integrates the power-law-family profile ODE
 *   [K gamma/(s sigma^(gamma N+1)) y^(gamma-2) - m N kappa theta/sigma^(theta N+1) y^(theta-2)] y'
 *     = (1-s) m^2 / sigma^(N-1) z,   y(0) = alpha
 * on [0, z_max]. If the bracket collapses below `singular_tolerance |c(alpha)|`
 * (or y reaches 0) the table is cut at the last good node and flagged.
 */
Tabulated powerlaw_profile(const ModelParams& params, double m, double n, double sigma, double alpha, double s,
                           const TabulationOptions& options = {});

/// Value and z-derivative. Negative z is mapped to |z| with an odd derivative.
/// Tabulated profiles throw Error(OutOfRange) beyond the table.
ProfileValue evaluate(const Profile& profile, double z);

/// Support radius z* where the profile drops to vacuum, located by bisection
/// to 1e-10. Empty when the profile never reaches vacuum.
std::optional<double> support_radius(const Profile& profile);

/// y(0).
double center_value(const Profile& profile);

}  // namespace nssol

#endif  // NSSOL_PROFILES_HPP
