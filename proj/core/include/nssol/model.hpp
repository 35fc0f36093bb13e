#ifndef NSSOL_MODEL_HPP
#define NSSOL_MODEL_HPP

/**
 * @file model.hpp
 * @brief Model parameters and solution families for the radially symmetric
 * compressible Navier-Stokes system
 *
 *   rho_t + u rho_r + rho u_r + (N-1)/r rho u = 0
 *   rho (u_t + u u_r) + delta K (rho^gamma)_r
 *       = (kappa rho^theta)_r ((N-1)/r u + u_r)
 *         + kappa rho^theta (u_rr + (N-1)/r u_r - (N-1)/r^2 u)
 *
 * with pressure P = K rho^gamma and viscosity mu(rho) = kappa rho^theta.
 */

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nssol {

struct ModelParams {
  int N = 3;           ///< spatial dimension
  double gamma = 1.0;  ///< adiabatic exponent
  double theta = 1.0;  ///< viscosity exponent
  double K = 1.0;      ///< pressure constant
  double kappa = 1.0;  ///< viscosity constant
  int delta = 1;       ///< 1 = with pressure, 0 = pressureless

  bool operator==(const ModelParams&) const = default;
};

/// theta = gamma = 1, density A exp(B z^2 + C) / a^N.
struct IsothermalFamily {
  double A = 1.0;
  double B = 1.0;
  double C = 0.0;
  double a0 = 1.0;
  double a1 = 0.0;

  bool operator==(const IsothermalFamily&) const = default;
};

/// theta = gamma > 1, density y(z) / a^N with y^(theta-2) y' = z.
struct PolytropicFamily {
  double alpha = 1.0;
  double a0 = 1.0;
  double a1 = 0.0;

  bool operator==(const PolytropicFamily&) const = default;
};

/// theta = gamma/2 + 1/2 - 1/N, a(t) = sigma (m t + n)^s, tabulated profile.
struct PowerLawFamily {
  double m = -1.0;
  double n = 1.0;
  double sigma = 1.0;
  double alpha = 1.0;

  bool operator==(const PowerLawFamily&) const = default;
};

/// delta = 0, theta = 1, density exp(y(z)) / a^N with y = lambda z^2/(2 N kappa) + alpha.
struct PressurelessTheta1Family {
  double lambda = 1.0;
  double alpha = 0.0;
  double a0 = 1.0;
  double a1 = 0.0;

  bool operator==(const PressurelessTheta1Family&) const = default;
};

/// How a profile value y is turned into the density shape.
enum class ShapeMap {
  Identity,     ///< shape = y
  Exponential,  ///< shape = exp(y)
};

/// delta = 0, theta != 1, density y(z) / a^N (vacuum where the radicand is negative).
struct PressurelessFamily {
  double lambda = 1.0;
  double alpha = 1.0;
  double a0 = 1.0;
  double a1 = 0.0;
  ShapeMap shape = ShapeMap::Identity;

  bool operator==(const PressurelessFamily&) const = default;
};

using Family = std::variant<IsothermalFamily, PolytropicFamily, PowerLawFamily,
                            PressurelessTheta1Family, PressurelessFamily>;

/// Stable tag used in configuration files and reports.
std::string family_tag(const Family& family);

/// Human-readable family description.
std::string family_description(const Family& family);

/// Pressure switch a family requires.
int required_delta(const Family& family);

struct DerivedConstants {
  double s = 0.0;               ///< similarity exponent of a(t) = sigma (m t + n)^s
  double theta_required = 0.0;  ///< gamma/2 + 1/2 - 1/N

  bool operator==(const DerivedConstants&) const = default;
};

struct Violation {
  std::string constraint;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ValidationOutcome {
  std::vector<Violation> violations;
  std::optional<DerivedConstants> derived;

  bool ok() const { return violations.empty(); }
  bool operator==(const ValidationOutcome&) const = default;
};

/// Relative tolerance for the equality constraints between exponents.
inline constexpr double kExponentTolerance = 1e-12;

/// gamma/2 + 1/2 - 1/N.
double theta_required(int N, double gamma);

/// 2 / (gamma N - N + 2). Cross-checked against 1 / ((gamma - theta) N)
/// whenever theta equals theta_required. Throws Error(Domain) if the
/// denominator is not positive.
double derived_s(const ModelParams& params);

/// Checks every parameter and family constraint and reports each violation
/// separately. Never throws.
ValidationOutcome validate(const ModelParams& params, const Family& family);

/// Throws Error(Validation) listing every violation when validation fails.
ValidationOutcome require_valid(const ModelParams& params, const Family& family);

}  // namespace nssol

#endif  // NSSOL_MODEL_HPP
