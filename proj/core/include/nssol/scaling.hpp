#ifndef NSSOL_SCALING_HPP
#define NSSOL_SCALING_HPP

/**
 * @file scaling.hpp
 * @brief Scaling functions a(t) with their derivatives.
 *
 * The power-law family has a closed form. Every other family drives a(t)
 * through a second-order ODE  a'' = F(a, a'),  integrated forward from t = 0
 * as the first-order system (a, a') with adaptive Dormand-Prince steps and
 * cubic Hermite dense output. Integration stops at the first vanishing event
 * a <= eps_a.
 */

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nssol {

struct PowerLawScaling {
  double sigma = 1.0;
  double m = 0.0;
  double n = 1.0;
  double s = 1.0;
};

enum class ScalingOdeKind {
  Isothermal,          ///< a'' = -2BK/a + 2BN kappa a'/a^2
  Polytropic,          ///< a'' = -K gamma a^(N-theta N-1) + N kappa theta a' a^(N-theta N-2)
  PressurelessTheta1,  ///< a'' = lambda a'/a^2
  Pressureless,        ///< a'' = -lambda a'/a^(N theta - N + 2)
  Custom,
};

struct ScalingOde {
  ScalingOdeKind kind = ScalingOdeKind::Custom;
  std::vector<std::pair<std::string, double>> parameters;
  std::function<double(double a, double adot)> acceleration;
};

enum class IvpStatus {
  Completed,  ///< reached the requested end time
  Vanished,   ///< a(t) reached zero at a finite time
  Diverged,   ///< a or a' left the representable range
};

const char* to_string(IvpStatus status) noexcept;

struct NumericScaling {
  ScalingOde ode;
  double a0 = 1.0;
  double a1 = 0.0;
  double t_end_requested = 0.0;
  std::vector<double> t;
  std::vector<double> a;
  std::vector<double> adot;
  std::vector<double> addot;
  IvpStatus status = IvpStatus::Completed;
  std::optional<double> vanishing_time;
};

using ScalingFn = std::variant<PowerLawScaling, NumericScaling>;

struct ScalingValue {
  double a = 0.0;
  double adot = 0.0;
};

struct IntegrationOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double vanish_fraction = 1e-8;  ///< eps_a = vanish_fraction * a0
  double max_step = 1e-3;
};

/// Closed-form a(t) = sigma (m t + n)^s. Requires sigma > 0, n > 0, 0 < s <= 1.
PowerLawScaling powerlaw_scaling(double sigma, double m, double n, double s);

/// Integrates a'' = ode.acceleration(a, a') on [0, t_end].
NumericScaling integrate_scaling(ScalingOde ode, double a0, double a1, double t_end,
                                 const IntegrationOptions& options = {});

/// theta = gamma = 1 family with density A exp(B z^2 + C)/a^N.
NumericScaling integrate_isothermal(double B, double K, double kappa, int N, double a0, double a1, double t_end,
                                    const IntegrationOptions& options = {});

/// theta = gamma > 1 family; `exponent` is the common value of gamma and theta.
NumericScaling integrate_polytropic(double exponent, double K, double kappa, int N, double a0, double a1,
                                    double t_end, const IntegrationOptions& options = {});

/// Pressureless families; the theta = 1 form is selected when theta == 1.
NumericScaling integrate_pressureless(double theta, double lambda, int N, double a0, double a1, double t_end,
                                      const IntegrationOptions& options = {});

/// a(t) and a'(t). Throws Error(Domain) outside the function's domain.
ScalingValue evaluate(const ScalingFn& fn, double t);

/// Time interval on which `evaluate` is defined (upper end may be +inf).
std::pair<double, double> time_domain(const ScalingFn& fn);

/// Time where a(t) reaches zero: -n/m for a decaying power law, the detected
/// event for an integrated trajectory, otherwise empty.
std::optional<double> vanishing_time(const ScalingFn& fn);

}  // namespace nssol

#endif  // NSSOL_SCALING_HPP
