#ifndef NSSOL_RESIDUAL_HPP
#define NSSOL_RESIDUAL_HPP

/**
 * @file residual.hpp
 * @brief Finite-difference residuals of the radial mass and momentum equations.
 *
 * The verifier only sees a (t, r) -> (rho, u) evaluator. Every derivative is
 * a second-order centered difference on the cross stencil
 * {(t, r), (t +- h_t, r), (t, r +- h_r)}; (rho^gamma)_r and (rho^theta)_r are
 * differenced on the powered samples.
 *
 *   mass     = rho_t + u rho_r + rho u_r + (N-1)/r rho u
 *   momentum = rho (u_t + u u_r) + delta K (rho^gamma)_r
 *              - (kappa rho^theta)_r ((N-1)/r u + u_r)
 *              - kappa rho^theta (u_rr + (N-1)/r u_r - (N-1)/r^2 u)
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "nssol/fields.hpp"
#include "nssol/model.hpp"

namespace nssol {

struct Point {
  double t = 0.0;
  double r = 0.0;
};

struct StepSizes {
  double h_t = 1e-3;
  double h_r = 1e-3;

  bool operator==(const StepSizes&) const = default;
};

struct Window {
  double t_min = 0.0;
  double t_max = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;

  bool operator==(const Window&) const = default;
};

/// Mass residual. Throws Error(StencilOutOfDomain) if r - h_r <= 0 or a
/// stencil sample lies outside the fields' domain.
double mass_residual(const FieldFn& field, int N, Point point, StepSizes h);

/// Momentum residual. Throws Error(StencilOutOfDomain) as above and
/// Error(NonFiniteField) when a stencil sample is vacuum (rho <= 0) or not finite.
double momentum_residual(const FieldFn& field, const ModelParams& params, Point point, StepSizes h);

struct ResolutionNorms {
  double h_t = 0.0;
  double h_r = 0.0;
  double mass_linf = 0.0;
  double mass_l2 = 0.0;  ///< root mean square over evaluated lattice points
  double mom_linf = 0.0;
  double mom_l2 = 0.0;
  std::size_t lattice_points = 0;
  std::size_t mass_skipped = 0;  ///< stencils straddling a vacuum edge
  std::size_t mom_skipped = 0;   ///< stencils touching vacuum or non-finite samples
};

struct ResidualReport {
  Window window;
  std::size_t lattice = 33;
  std::vector<ResolutionNorms> levels;
  /// log(norm_k / norm_{k+1}) / log(h_k / h_{k+1}) on the L-infinity norms.
  std::vector<std::optional<double>> order_mass_pairs;
  std::vector<std::optional<double>> order_mom_pairs;

  std::optional<double> order_mass() const;
  std::optional<double> order_mom() const;
};

struct VerifyOptions {
  std::size_t lattice = 33;  ///< points per axis
  std::size_t threads = 0;   ///< 0 = NSSOL_THREADS / hardware
};

/// Residual norms on a uniform lattice over `window`, one level per step pair.
ResidualReport verify_window(const FieldFn& field, const ModelParams& params, const Window& window,
                             const std::vector<StepSizes>& resolutions, const VerifyOptions& options = {});

/// Builds the family's exact solution and verifies it on `window` with the
/// family's pressure switch.
ResidualReport verify_solution(const ModelParams& params, const Family& family, const Window& window,
                               const std::vector<StepSizes>& resolutions, const VerifyOptions& options = {},
                               const SolutionOptions& solution = {});

/// Convergence order estimate from two norms; empty unless both are positive and finite.
std::optional<double> convergence_order(double coarse_norm, double fine_norm, double coarse_h, double fine_h);

}  // namespace nssol

#endif  // NSSOL_RESIDUAL_HPP
