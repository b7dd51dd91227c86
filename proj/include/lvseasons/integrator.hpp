#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lvseasons/common.hpp"

namespace lvseasons {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
};

inline void validate_config(const IntegratorConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !std::isfinite(cfg.rel_tol))
    throw std::invalid_argument("rel_tol must be positive and finite");
  if (!(cfg.abs_tol > 0.0) || !std::isfinite(cfg.abs_tol))
    throw std::invalid_argument("abs_tol must be positive and finite");
  if (!(cfg.max_step > 0.0))
    throw std::invalid_argument("max_step must be positive");
}

// Dormand-Prince 5(4) embedded pair with FSAL and per-component error
// scaling. `abs_tol_override`, when given, replaces cfg.abs_tol per
// component; a zero entry puts that component under pure relative control
// (used for decoupled sensitivity diagonals that decay through the
// absolute-tolerance floor but must keep relative accuracy).
template <int N, class RHS>
Eigen::Matrix<double, N, 1> integrate(
    RHS&& rhs, Eigen::Matrix<double, N, 1> y, double t0, double t1,
    const IntegratorConfig& cfg,
    const Eigen::Matrix<double, N, 1>* abs_tol_override = nullptr) {
  using VecN = Eigen::Matrix<double, N, 1>;

  static constexpr double A21 = 1.0 / 5;
  static constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
  static constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
  static constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                          A53 = 64448.0 / 6561, A54 = -212.0 / 729;
  static constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33,
                          A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                          A65 = -5103.0 / 18656;
  static constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                          B5 = -2187.0 / 6784, B6 = 11.0 / 84;
  static constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695,
                          E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                          E6 = 22.0 / 525, E7 = -1.0 / 40;
  static constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5,
                          C5 = 8.0 / 9;

  validate_config(cfg);
  if (!(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw std::invalid_argument("integration interval must be finite with t1 >= t0");
  const double span = t1 - t0;
  if (span == 0.0) return y;

  VecN atol;
  if (abs_tol_override) {
    atol = *abs_tol_override;
  } else {
    atol.setConstant(cfg.abs_tol);
  }

  VecN k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, errv;
  double t = t0;
  rhs(t, y, k1);

  auto scaled_err = [&](const VecN& ya, const VecN& yb, const VecN& ev) {
    double acc = 0.0;
    int active = 0;
    for (int i = 0; i < N; ++i) {
      const double sc =
          atol[i] + cfg.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      if (sc == 0.0) {
        if (ev[i] != 0.0) return std::numeric_limits<double>::infinity();
        continue;
      }
      const double q = ev[i] / sc;
      acc += q * q;
      ++active;
    }
    return active == 0 ? 0.0 : std::sqrt(acc / active);
  };

  // Crude first step from the scaled sizes of y and y'; the controller
  // corrects it within a step or two.
  double h;
  {
    double d0 = 0.0, d1 = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sc = atol[i] + cfg.rel_tol * std::abs(y[i]);
      if (sc == 0.0) continue;
      d0 = std::max(d0, std::abs(y[i]) / sc);
      d1 = std::max(d1, std::abs(k1[i]) / sc);
    }
    h = (d1 > 1e-12 && d0 > 1e-12) ? 0.01 * (d0 / d1) : 1e-6 * span;
    h = std::min({h, span, cfg.max_step});
    if (!(h > 0.0)) h = 1e-6 * span;
  }

  const double h_floor =
      1e-14 * std::max({std::abs(t0), std::abs(t1), 1.0});
  double fac_max = 5.0;
  long steps = 0;
  const long step_limit = 10'000'000;

  while (t < t1) {
    if (++steps > step_limit)
      throw std::runtime_error("integrator exceeded step limit");
    h = std::min(h, t1 - t);

    rhs(t + C2 * h, ytmp = y + h * (A21 * k1), k2);
    rhs(t + C3 * h, ytmp = y + h * (A31 * k1 + A32 * k2), k3);
    rhs(t + C4 * h, ytmp = y + h * (A41 * k1 + A42 * k2 + A43 * k3), k4);
    rhs(t + C5 * h,
        ytmp = y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4), k5);
    rhs(t + h,
        ytmp = y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
        k6);
    ynew = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    rhs(t + h, ynew, k7);
    errv = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);

    if (!ynew.allFinite())
      throw std::runtime_error("integrator produced non-finite state");

    const double err = scaled_err(y, ynew, errv);
    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      const double fac =
          err == 0.0 ? fac_max
                     : std::min(fac_max, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      h = std::min(h * fac, cfg.max_step);
      fac_max = 5.0;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      fac_max = 1.0;
      if (h < h_floor) throw StepSizeUnderflow(t);
    }
  }
  return y;
}

}  // namespace lvseasons
