#include "nssol/fields.hpp"

#include <cmath>
#include <sstream>

#include "nssol/error.hpp"
#include "nssol/parallel.hpp"

namespace nssol {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_increasing(const std::vector<double>& values, const char* name) {
  if (values.empty()) throw Error(ErrorKind::Domain, std::string(name) + " must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorKind::Domain, std::string(name) + " contains a non-finite value");
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw Error(ErrorKind::Domain, std::string(name) + " must be strictly increasing");
    }
  }
}

}  // namespace

double DensityShape::operator()(double z) const {
  const double y = evaluate(profile, z).y;
  if (map == ShapeMap::Exponential) return std::exp(y);
  return y;
}

FieldSample eval_point(const DensityShape& shape, const ScalingFn& scaling, int N, double t, double r) {
  const auto [a, adot] = evaluate(scaling, t);
  if (!(a > 0.0)) throw Error(ErrorKind::Domain, "scaling function is not positive at t=" + std::to_string(t));
  const double z = r / a;
  const double rho = shape(z) / std::pow(a, N);
  return {rho, adot / a * r};
}

FieldSample eval_point(const Profile& profile, const ScalingFn& scaling, int N, double t, double r) {
  return eval_point(DensityShape{profile, ShapeMap::Identity}, scaling, N, t, r);
}

FieldGrid eval_grid(const DensityShape& shape, const ScalingFn& scaling, int N, const std::vector<double>& t_values,
                    const std::vector<double>& r_values, std::size_t threads) {
  require_increasing(t_values, "t_values");
  require_increasing(r_values, "r_values");
  if (!(r_values.front() > 0.0)) throw Error(ErrorKind::Domain, "r_min must be > 0");

  FieldGrid grid;
  grid.t_values = t_values;
  grid.r_values = r_values;
  const std::size_t nr = r_values.size();
  grid.rho.assign(t_values.size() * nr, 0.0);
  grid.u.assign(t_values.size() * nr, 0.0);

  parallel_for(
      t_values.size(),
      [&](std::size_t i) {
        const double t = t_values[i];
        for (std::size_t j = 0; j < nr; ++j) {
          const double r = r_values[j];
          FieldSample sample;
          try {
            sample = eval_point(shape, scaling, N, t, r);
          } catch (const Error& e) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "field evaluation failed at (t=" << t << ", r=" << r << "): " << e.what();
            throw Error(e.kind(), msg.str());
          }
          grid.rho[i * nr + j] = sample.rho;
          grid.u[i * nr + j] = sample.u;
        }
      },
      threads);
  return grid;
}

DensityShape make_shape(const ModelParams& params, const Family& family, const TabulationOptions& tabulation) {
  return std::visit(
      Overloaded{
          [](const IsothermalFamily& f) { return DensityShape{isothermal_profile(f.A, f.B, f.C)}; },
          [&](const PolytropicFamily& f) { return DensityShape{polytropic_profile(params.theta, f.alpha)}; },
          [&](const PowerLawFamily& f) {
            const double s = derived_s(params);
            return DensityShape{powerlaw_profile(params, f.m, f.n, f.sigma, f.alpha, s, tabulation)};
          },
          [&](const PressurelessTheta1Family& f) {
            return DensityShape{pressureless_theta1_profile(f.lambda, params.kappa, params.N, f.alpha)};
          },
          [&](const PressurelessFamily& f) {
            return DensityShape{pressureless_profile(params.theta, f.lambda, params.kappa, params.N, f.alpha),
                                f.shape};
          },
      },
      family);
}

ScalingFn make_scaling(const ModelParams& params, const Family& family, double t_end,
                       const IntegrationOptions& integration) {
  return std::visit(
      Overloaded{
          [&](const IsothermalFamily& f) -> ScalingFn {
            return integrate_isothermal(f.B, params.K, params.kappa, params.N, f.a0, f.a1, t_end, integration);
          },
          [&](const PolytropicFamily& f) -> ScalingFn {
            return integrate_polytropic(params.gamma, params.K, params.kappa, params.N, f.a0, f.a1, t_end,
                                        integration);
          },
          [&](const PowerLawFamily& f) -> ScalingFn {
            return powerlaw_scaling(f.sigma, f.m, f.n, derived_s(params));
          },
          [&](const PressurelessTheta1Family& f) -> ScalingFn {
            return integrate_pressureless(1.0, f.lambda, params.N, f.a0, f.a1, t_end, integration);
          },
          [&](const PressurelessFamily& f) -> ScalingFn {
            return integrate_pressureless(params.theta, f.lambda, params.N, f.a0, f.a1, t_end, integration);
          },
      },
      family);
}

SelfSimilarSolution make_solution(const ModelParams& params, const Family& family, double t_end,
                                  const SolutionOptions& options) {
  require_valid(params, family);
  return SelfSimilarSolution{make_shape(params, family, options.tabulation),
                             make_scaling(params, family, t_end, options.integration), params.N};
}

}  // namespace nssol
