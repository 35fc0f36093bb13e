#include "nssol/residual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nssol/error.hpp"
#include "nssol/parallel.hpp"

namespace nssol {
namespace {

struct Stencil {
  double r = 0.0;
  FieldSample center, t_plus, t_minus, r_plus, r_minus;

  template <class F>
  bool all_of(F&& pred) const {
    return pred(center) && pred(t_plus) && pred(t_minus) && pred(r_plus) && pred(r_minus);
  }
  template <class F>
  bool any_of(F&& pred) const {
    return pred(center) || pred(t_plus) || pred(t_minus) || pred(r_plus) || pred(r_minus);
  }
};

std::string point_text(Point p) {
  std::ostringstream out;
  out.precision(17);
  out << "(t=" << p.t << ", r=" << p.r << ")";
  return out.str();
}

Stencil sample(const FieldFn& field, Point p, StepSizes h) {
  if (!(p.r - h.h_r > 0.0)) {
    throw Error(ErrorKind::StencilOutOfDomain, "stencil at " + point_text(p) + " reaches r <= 0");
  }
  try {
    return Stencil{p.r,
                   field(p.t, p.r),
                   field(p.t + h.h_t, p.r),
                   field(p.t - h.h_t, p.r),
                   field(p.t, p.r + h.h_r),
                   field(p.t, p.r - h.h_r)};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Domain || e.kind() == ErrorKind::OutOfRange) {
      throw Error(ErrorKind::StencilOutOfDomain, "stencil at " + point_text(p) + " leaves the field domain: " +
                                                     e.what());
    }
    throw;
  }
}

double mass_from(const Stencil& s, int N, StepSizes h) {
  const double rho_t = (s.t_plus.rho - s.t_minus.rho) / (2.0 * h.h_t);
  const double rho_r = (s.r_plus.rho - s.r_minus.rho) / (2.0 * h.h_r);
  const double u_r = (s.r_plus.u - s.r_minus.u) / (2.0 * h.h_r);
  const FieldSample& c = s.center;
  return rho_t + c.u * rho_r + c.rho * u_r + (N - 1) / s.r * c.rho * c.u;
}

bool vacuum_or_bad(const FieldSample& f) { return !(f.rho > 0.0) || !std::isfinite(f.rho) || !std::isfinite(f.u); }

double momentum_from(const Stencil& s, const ModelParams& p, StepSizes h) {
  const FieldSample& c = s.center;
  const double r = s.r;
  const double n1 = p.N - 1;
  const double u_t = (s.t_plus.u - s.t_minus.u) / (2.0 * h.h_t);
  const double u_r = (s.r_plus.u - s.r_minus.u) / (2.0 * h.h_r);
  const double u_rr = (s.r_plus.u - 2.0 * c.u + s.r_minus.u) / (h.h_r * h.h_r);
  const double pressure_r = (std::pow(s.r_plus.rho, p.gamma) - std::pow(s.r_minus.rho, p.gamma)) / (2.0 * h.h_r);
  const double mu = p.kappa * std::pow(c.rho, p.theta);
  const double mu_r =
      p.kappa * (std::pow(s.r_plus.rho, p.theta) - std::pow(s.r_minus.rho, p.theta)) / (2.0 * h.h_r);
  return c.rho * (u_t + c.u * u_r) + p.delta * p.K * pressure_r - mu_r * (n1 / r * c.u + u_r) -
         mu * (u_rr + n1 / r * u_r - n1 / (r * r) * c.u);
}

double lattice_coord(double lo, double hi, std::size_t i, std::size_t n) {
  if (n <= 1) return lo;
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

double geometric_step(StepSizes h) { return std::sqrt(h.h_t * h.h_r); }

}  // namespace

double mass_residual(const FieldFn& field, int N, Point point, StepSizes h) {
  return mass_from(sample(field, point, h), N, h);
}

double momentum_residual(const FieldFn& field, const ModelParams& params, Point point, StepSizes h) {
  const Stencil s = sample(field, point, h);
  if (s.any_of(vacuum_or_bad)) {
    throw Error(ErrorKind::NonFiniteField, "momentum stencil at " + point_text(point) + " touches vacuum");
  }
  return momentum_from(s, params, h);
}

std::optional<double> ResidualReport::order_mass() const {
  return order_mass_pairs.empty() ? std::nullopt : order_mass_pairs.front();
}

std::optional<double> ResidualReport::order_mom() const {
  return order_mom_pairs.empty() ? std::nullopt : order_mom_pairs.front();
}

std::optional<double> convergence_order(double coarse_norm, double fine_norm, double coarse_h, double fine_h) {
  if (!(coarse_norm > 0.0) || !(fine_norm > 0.0) || !std::isfinite(coarse_norm) || !std::isfinite(fine_norm)) {
    return std::nullopt;
  }
  if (!(coarse_h > 0.0) || !(fine_h > 0.0) || coarse_h == fine_h) return std::nullopt;
  return std::log(coarse_norm / fine_norm) / std::log(coarse_h / fine_h);
}

ResidualReport verify_window(const FieldFn& field, const ModelParams& params, const Window& window,
                             const std::vector<StepSizes>& resolutions, const VerifyOptions& options) {
  if (!(window.t_max >= window.t_min) || !(window.r_max >= window.r_min)) {
    throw Error(ErrorKind::Domain, "verify_window: window bounds are inverted");
  }
  if (options.lattice == 0) throw Error(ErrorKind::Domain, "verify_window: lattice must be >= 1");
  for (const auto& h : resolutions) {
    if (!(h.h_t > 0.0) || !(h.h_r > 0.0)) throw Error(ErrorKind::Domain, "verify_window: step sizes must be > 0");
  }

  ResidualReport report;
  report.window = window;
  report.lattice = options.lattice;
  const std::size_t n = options.lattice;
  const std::size_t count = n * n;

  for (const auto& h : resolutions) {
    struct PointResult {
      std::optional<double> mass;
      std::optional<double> mom;
    };
    std::vector<PointResult> results(count);
    parallel_for(
        count,
        [&](std::size_t k) {
          const Point p{lattice_coord(window.t_min, window.t_max, k / n, n),
                        lattice_coord(window.r_min, window.r_max, k % n, n)};
          const Stencil s = sample(field, p, h);
          PointResult res;
          const bool any_vacuum = s.any_of([](const FieldSample& f) { return !(f.rho > 0.0); });
          const bool all_vacuum = s.all_of([](const FieldSample& f) { return f.rho == 0.0; });
          const bool finite =
              s.all_of([](const FieldSample& f) { return std::isfinite(f.rho) && std::isfinite(f.u); });
          if (finite && (!any_vacuum || all_vacuum)) res.mass = mass_from(s, params.N, h);
          if (!s.any_of(vacuum_or_bad)) {
            const double value = momentum_from(s, params, h);
            if (std::isfinite(value)) res.mom = value;
          }
          results[k] = res;
        },
        options.threads);

    ResolutionNorms norms;
    norms.h_t = h.h_t;
    norms.h_r = h.h_r;
    norms.lattice_points = count;
    double mass_sq = 0.0, mom_sq = 0.0;
    std::size_t mass_n = 0, mom_n = 0;
    for (const auto& res : results) {
      if (res.mass) {
        norms.mass_linf = std::max(norms.mass_linf, std::abs(*res.mass));
        mass_sq += *res.mass * *res.mass;
        ++mass_n;
      } else {
        ++norms.mass_skipped;
      }
      if (res.mom) {
        norms.mom_linf = std::max(norms.mom_linf, std::abs(*res.mom));
        mom_sq += *res.mom * *res.mom;
        ++mom_n;
      } else {
        ++norms.mom_skipped;
      }
    }
    norms.mass_l2 = mass_n ? std::sqrt(mass_sq / mass_n) : 0.0;
    norms.mom_l2 = mom_n ? std::sqrt(mom_sq / mom_n) : 0.0;
    report.levels.push_back(norms);
  }

  for (std::size_t k = 0; k + 1 < report.levels.size(); ++k) {
    const auto& coarse = report.levels[k];
    const auto& fine = report.levels[k + 1];
    const double hc = geometric_step({coarse.h_t, coarse.h_r});
    const double hf = geometric_step({fine.h_t, fine.h_r});
    report.order_mass_pairs.push_back(convergence_order(coarse.mass_linf, fine.mass_linf, hc, hf));
    report.order_mom_pairs.push_back(convergence_order(coarse.mom_linf, fine.mom_linf, hc, hf));
  }
  return report;
}

ResidualReport verify_solution(const ModelParams& params, const Family& family, const Window& window,
                               const std::vector<StepSizes>& resolutions, const VerifyOptions& options,
                               const SolutionOptions& solution) {
  require_valid(params, family);
  double h_t_max = 0.0;
  for (const auto& h : resolutions) h_t_max = std::max(h_t_max, h.h_t);
  const double t_end = window.t_max + 2.0 * h_t_max + 1e-9;

  const SelfSimilarSolution exact = make_solution(params, family, t_end, solution);
  const auto [t_lo, t_hi] = time_domain(exact.scaling);
  if (window.t_min - h_t_max < t_lo || window.t_max + h_t_max > t_hi) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "verification window t in [" << window.t_min << ", " << window.t_max
        << "] (plus stencil) leaves the scaling function's domain [" << t_lo << ", " << t_hi << "]";
    if (const auto tv = vanishing_time(exact.scaling)) msg << "; a(t) vanishes at t=" << *tv;
    throw Error(ErrorKind::StencilOutOfDomain, msg.str());
  }

  ModelParams p = params;
  p.delta = required_delta(family);
  return verify_window(exact.evaluator(), p, window, resolutions, options);
}

}  // namespace nssol
