#ifndef NSSOL_ODE_HPP
#define NSSOL_ODE_HPP

/*
 * Embedded Runge-Kutta 5(4) pair of Dormand and Prince with FSAL, an
 * elementary step-size controller and per-step event hook. Dense output is
 * left to the caller: every accepted step records (t, y, y') so that a cubic
 * Hermite interpolant can be built on top of it.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace nssol::ode {

template <std::size_t Dim>
using State = std::array<double, Dim>;

template <std::size_t Dim>
struct Node {
  double t = 0.0;
  State<Dim> y{};
  State<Dim> dy{};
};

struct AdaptiveOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  ///< 0 selects a starting step automatically
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 5'000'000;
};

enum class StopReason {
  Completed,      ///< reached t_end
  Event,          ///< the stop predicate returned true
  StepUnderflow,  ///< step size fell below the time resolution
  NonFinite,      ///< the right-hand side produced inf/nan
  MaxSteps,
};

template <std::size_t Dim>
struct Trajectory {
  std::vector<Node<Dim>> nodes;
  StopReason reason = StopReason::Completed;
};

/// Cubic Hermite interpolation on one interval; returns value and derivative.
inline std::array<double, 2> hermite(double t0, double y0, double d0, double t1, double y1, double d1,
                                     double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  const double value = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
  const double dh00 = (6 * s2 - 6 * s) / h;
  const double dh10 = 3 * s2 - 4 * s + 1;
  const double dh01 = (-6 * s2 + 6 * s) / h;
  const double dh11 = 3 * s2 - 2 * s;
  const double slope = dh00 * y0 + dh10 * d0 + dh01 * y1 + dh11 * d1;
  return {value, slope};
}

namespace detail {

// Dormand-Prince coefficients.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
// Error coefficients: 5th-order weights minus 4th-order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t Dim>
bool all_finite(const State<Dim>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace detail

/**
 * Integrates y' = rhs(t, y) from t0 towards t_end (t_end > t0).
 *
 * `stop(node)` is called on every accepted node, the initial one included;
 * returning true ends the integration with StopReason::Event. The returned
 * trajectory always holds the initial node plus every accepted step.
 */
template <std::size_t Dim, class Rhs, class Stop>
Trajectory<Dim> integrate(Rhs&& rhs, double t0, const State<Dim>& y0, double t_end,
                          const AdaptiveOptions& opt, Stop&& stop) {
  using namespace detail;
  Trajectory<Dim> out;

  Node<Dim> cur{t0, y0, rhs(t0, y0)};
  out.nodes.push_back(cur);
  if (!all_finite(cur.dy) || !all_finite(cur.y)) {
    out.reason = StopReason::NonFinite;
    return out;
  }
  if (stop(cur)) {
    out.reason = StopReason::Event;
    return out;
  }

  const auto scale = [&](const State<Dim>& a, const State<Dim>& b, std::size_t i) {
    return opt.atol + opt.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
  };

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Hairer-Norsett-Wanner starting step heuristic.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < Dim; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(cur.y[i]);
      d0 += (cur.y[i] / sc) * (cur.y[i] / sc);
      d1 += (cur.dy[i] / sc) * (cur.dy[i] / sc);
    }
    d0 = std::sqrt(d0 / Dim);
    d1 = std::sqrt(d1 / Dim);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  h = std::min({h, opt.max_step, t_end - t0});

  State<Dim> k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, tmp{}, ynew{};
  const State<Dim>& y = cur.y;
  std::size_t steps = 0;

  while (cur.t < t_end) {
    if (++steps > opt.max_steps) {
      out.reason = StopReason::MaxSteps;
      return out;
    }
    const double resolution = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cur.t));
    if (h < resolution) {
      out.reason = StopReason::StepUnderflow;
      return out;
    }
    bool last = false;
    if (cur.t + h >= t_end || t_end - (cur.t + h) < resolution) {
      h = t_end - cur.t;
      last = true;
    }
    const State<Dim>& k1 = cur.dy;
    const double t = cur.t;

    for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(t + c2 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * h, tmp);
    for (std::size_t i = 0; i < Dim; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(t + h, tmp);
    for (std::size_t i = 0; i < Dim; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    const double tnew = last ? t_end : t + h;
    k7 = rhs(tnew, ynew);

    double err = 0.0;
    bool finite = all_finite(ynew) && all_finite(k7);
    if (finite) {
      for (std::size_t i = 0; i < Dim; ++i) {
        const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double r = e / scale(y, ynew, i);
        err += r * r;
      }
      err = std::sqrt(err / Dim);
      finite = std::isfinite(err);
    }

    if (!finite) {
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      cur.t = tnew;
      cur.y = ynew;
      cur.dy = k7;
      out.nodes.push_back(cur);
      if (stop(cur)) {
        out.reason = StopReason::Event;
        return out;
      }
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * fac, opt.max_step);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  out.reason = StopReason::Completed;
  return out;
}

template <std::size_t Dim, class Rhs>
Trajectory<Dim> integrate(Rhs&& rhs, double t0, const State<Dim>& y0, double t_end,
                          const AdaptiveOptions& opt) {
  return integrate<Dim>(std::forward<Rhs>(rhs), t0, y0, t_end, opt, [](const Node<Dim>&) { return false; });
}

}  // namespace nssol::ode

#endif  // NSSOL_ODE_HPP
