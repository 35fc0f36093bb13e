#ifndef NSSOL_FIELDS_HPP
#define NSSOL_FIELDS_HPP

/**
 * @file fields.hpp
 * @brief Density and velocity fields of the self-similar ansatz
 *
 *   rho(t, r) = shape(r / a(t)) / a(t)^N,   u(t, r) = a'(t) / a(t) r.
 */

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "nssol/model.hpp"
#include "nssol/profiles.hpp"
#include "nssol/scaling.hpp"

namespace nssol {

struct FieldSample {
  double rho = 0.0;
  double u = 0.0;
};

/// Black-box (t, r) -> (rho, u) evaluator consumed by the residual verifier.
using FieldFn = std::function<FieldSample(double t, double r)>;

/// Maps a profile value to the density shape (identity or exponential).
struct DensityShape {
  Profile profile;
  ShapeMap map = ShapeMap::Identity;

  double operator()(double z) const;
};

FieldSample eval_point(const DensityShape& shape, const ScalingFn& scaling, int N, double t, double r);
FieldSample eval_point(const Profile& profile, const ScalingFn& scaling, int N, double t, double r);

/// Time-major samples: rho[i * r_values.size() + j] = rho(t_i, r_j).
struct FieldGrid {
  std::vector<double> t_values;
  std::vector<double> r_values;
  std::vector<double> rho;
  std::vector<double> u;

  std::size_t index(std::size_t i, std::size_t j) const { return i * r_values.size() + j; }
  double rho_at(std::size_t i, std::size_t j) const { return rho[index(i, j)]; }
  double u_at(std::size_t i, std::size_t j) const { return u[index(i, j)]; }
};

FieldGrid eval_grid(const DensityShape& shape, const ScalingFn& scaling, int N, const std::vector<double>& t_values,
                    const std::vector<double>& r_values, std::size_t threads = 0);

/// A profile/scaling pair for one family instance.
struct SelfSimilarSolution {
  DensityShape shape;
  ScalingFn scaling;
  int N = 1;

  FieldSample operator()(double t, double r) const { return eval_point(shape, scaling, N, t, r); }
  FieldGrid grid(const std::vector<double>& t_values, const std::vector<double>& r_values,
                 std::size_t threads = 0) const {
    return eval_grid(shape, scaling, N, t_values, r_values, threads);
  }
  FieldFn evaluator() const {
    return [self = std::make_shared<const SelfSimilarSolution>(*this)](double t, double r) { return (*self)(t, r); };
  }
};

struct SolutionOptions {
  TabulationOptions tabulation;
  IntegrationOptions integration;
};

/// Profile of a family instance, as its density shape.
DensityShape make_shape(const ModelParams& params, const Family& family, const TabulationOptions& tabulation = {});

/// Builds profile and scaling for a validated family; numeric scaling
/// functions are integrated on [0, t_end]. Throws Error(Validation) when the
/// parameters do not satisfy the family's constraints.
SelfSimilarSolution make_solution(const ModelParams& params, const Family& family, double t_end,
                                  const SolutionOptions& options = {});

/// Scaling function of a family instance on [0, t_end].
ScalingFn make_scaling(const ModelParams& params, const Family& family, double t_end,
                       const IntegrationOptions& integration = {});

}  // namespace nssol

#endif  // NSSOL_FIELDS_HPP
