#include "lvseasons/flow.hpp"

#include <cmath>

namespace lvseasons {

namespace {

void require_state(const Vec3& x) {
  for (int i = 0; i < 3; ++i)
    if (!(x[i] >= 0.0) || !std::isfinite(x[i]))
      throw std::invalid_argument("state must be finite and nonnegative");
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("time must be finite and nonnegative");
}

// Growth-phase vector field with species outside `mask` pinned: their rates
// are forced to zero so faces stay invariant to the bit.
struct GoodSeasonRhs {
  const SeasonalParams& p;
  std::array<bool, 3> mask;

  void operator()(double, const Vec3& x, Vec3& dx) const {
    const Vec3 g = p.growth_rate - p.competition * x;
    for (int i = 0; i < 3; ++i) dx[i] = mask[i] ? x[i] * g[i] : 0.0;
  }
};

}  // namespace

namespace detail {

std::array<bool, 3> support_of(const Vec3& x) {
  return {x[0] > 0.0, x[1] > 0.0, x[2] > 0.0};
}

GoodSeasonRun good_season_full(const SeasonalParams& params, const Vec3& x0,
                               double tau, const IntegratorConfig& cfg,
                               bool pure_relative_offsupport) {
  using Vec15 = Eigen::Matrix<double, 15, 1>;
  require_state(x0);
  require_time(tau);
  const auto mask = support_of(x0);
  const Mat3& a = params.competition;
  const Vec3& b = params.growth_rate;

  // y = [x, row-major sensitivity, integral of x]. The sensitivity rides the
  // unmasked Jacobian of the vector field: rows of absent species reduce to
  // dW_ij = g_i W_ij, which keeps off-diagonal entries at exactly zero and
  // carries the transversal exponentials on the diagonal.
  auto rhs = [&](double, const Vec15& y, Vec15& dy) {
    const Vec3 x = y.template head<3>();
    const Vec3 g = b - a * x;
    for (int i = 0; i < 3; ++i) dy[i] = mask[i] ? x[i] * g[i] : 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int m = 0; m < 3; ++m) {
          const double u_im = (i == m ? g[i] : 0.0) - x[i] * a(i, m);
          acc += u_im * y[3 + 3 * m + j];
        }
        dy[3 + 3 * i + j] = acc;
      }
    dy.template tail<3>() = x;
  };

  Vec15 y = Vec15::Zero();
  y.template head<3>() = x0;
  for (int i = 0; i < 3; ++i) y[3 + 4 * i] = 1.0;

  Vec15 atol = Vec15::Constant(cfg.abs_tol);
  if (pure_relative_offsupport)
    for (int i = 0; i < 3; ++i)
      if (!mask[i]) atol[3 + 4 * i] = 0.0;

  y = integrate<15>(rhs, y, 0.0, tau, cfg, &atol);

  GoodSeasonRun run;
  run.x = y.template head<3>();
  for (int i = 0; i < 3; ++i) {
    if (!mask[i]) run.x[i] = 0.0;
    for (int j = 0; j < 3; ++j) run.sensitivity(i, j) = y[3 + 3 * i + j];
  }
  run.integral = y.template tail<3>();
  return run;
}

}  // namespace detail

Vec3 linear_phase_map(const SeasonalParams& params, const Vec3& x,
                      double duration) {
  require_state(x);
  require_time(duration);
  Vec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = x[i] * std::exp(-params.death_rate[i] * duration);
  return out;
}

Vec3 lv_flow(const SeasonalParams& params, const Vec3& x, double t,
             const IntegratorConfig& cfg) {
  require_state(x);
  require_time(t);
  const auto mask = detail::support_of(x);
  Vec3 y = integrate<3>(GoodSeasonRhs{params, mask}, x, 0.0, t, cfg);
  for (int i = 0; i < 3; ++i)
    if (!mask[i]) y[i] = 0.0;
  return y;
}

Vec3 seasonal_flow(const SeasonalParams& params, const Vec3& x, double t,
                   const IntegratorConfig& cfg) {
  require_state(x);
  require_time(t);
  const double bad = params.bad_duration();
  const double good = params.good_duration();
  Vec3 y = x;
  double remaining = t;
  while (remaining > 0.0) {
    const double d_bad = std::min(remaining, bad);
    if (d_bad > 0.0) y = linear_phase_map(params, y, d_bad);
    remaining -= d_bad;
    if (remaining <= 0.0) break;
    const double d_good = std::min(remaining, good);
    if (d_good > 0.0) y = lv_flow(params, y, d_good, cfg);
    remaining -= d_good;
  }
  return y;
}

VariationalState variational_flow(const SeasonalParams& params, const Vec3& x,
                                  double t, const IntegratorConfig& cfg) {
  const double good = params.good_duration();
  if (t > good * (1.0 + 1e-9))
    throw std::invalid_argument("variational_flow spans one growth phase");
  auto run = detail::good_season_full(params, x, t, cfg, false);
  return {run.x, run.sensitivity};
}

std::vector<std::pair<double, Vec3>> sample_trajectory(
    const SeasonalParams& params, const Vec3& x, double horizon, int samples,
    const IntegratorConfig& cfg) {
  require_state(x);
  require_time(horizon);
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");

  std::vector<std::pair<double, Vec3>> rows;
  rows.emplace_back(0.0, x);
  if (horizon == 0.0 || samples == 1) return rows;

  const double bad = params.bad_duration();
  const double omega = params.period;
  Vec3 cur = x;
  double phase = 0.0;  // position within the current period
  double t_prev = 0.0;

  auto advance = [&](double delta) {
    while (delta > 0.0) {
      double step;
      if (phase < bad) {
        step = std::min(delta, bad - phase);
        cur = linear_phase_map(params, cur, step);
      } else {
        step = std::min(delta, omega - phase);
        cur = lv_flow(params, cur, step, cfg);
      }
      phase += step;
      delta -= step;
      if (phase >= omega) phase -= omega;
    }
  };

  for (int k = 1; k < samples; ++k) {
    const double tk = horizon * static_cast<double>(k) / (samples - 1);
    advance(tk - t_prev);
    t_prev = tk;
    rows.emplace_back(tk, cur);
  }
  return rows;
}

}  // namespace lvseasons
