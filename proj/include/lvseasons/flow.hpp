#pragma once

#include <array>
#include <utility>
#include <vector>

#include "lvseasons/integrator.hpp"
#include "lvseasons/params.hpp"

namespace lvseasons {

// Exact solution of the harsh phase: componentwise exponential decay for
// `duration` time units. duration = 0 is the identity.
Vec3 linear_phase_map(const SeasonalParams& params, const Vec3& x,
                      double duration);

// Growth-phase flow for time t >= 0 from x >= 0. Components that start at
// exactly zero are pinned to zero structurally (their derivative is forced
// to zero), so coordinate faces are invariant to the bit.
Vec3 lv_flow(const SeasonalParams& params, const Vec3& x, double t,
             const IntegratorConfig& cfg);

// Full switched flow from time 0: each period runs the harsh phase first,
// then the growth phase. t may stop mid-season.
Vec3 seasonal_flow(const SeasonalParams& params, const Vec3& x, double t,
                   const IntegratorConfig& cfg);

struct VariationalState {
  Vec3 x;
  Mat3 sensitivity;  // d x(t) / d x(0) along the growth-phase flow
};

// Growth-phase flow together with its state-transition matrix,
// 0 <= t <= good_duration().
VariationalState variational_flow(const SeasonalParams& params, const Vec3& x,
                                  double t, const IntegratorConfig& cfg);

// Samples the switched flow at `samples` evenly spaced times spanning
// [0, horizon]. horizon = 0 or samples = 1 yields the single row (0, x).
std::vector<std::pair<double, Vec3>> sample_trajectory(
    const SeasonalParams& params, const Vec3& x, double horizon, int samples,
    const IntegratorConfig& cfg);

namespace detail {

std::array<bool, 3> support_of(const Vec3& x);

// One growth phase of length tau carrying state, sensitivity matrix and the
// running time integral of the state. When pure_relative_offsupport is set,
// sensitivity diagonals of species outside the support of x0 integrate with
// zero absolute tolerance: those components are decoupled positive
// exponentials whose relative accuracy fixes the transversal multipliers,
// even when they decay far below any absolute floor.
struct GoodSeasonRun {
  Vec3 x;
  Mat3 sensitivity;
  Vec3 integral;
};

GoodSeasonRun good_season_full(const SeasonalParams& params, const Vec3& x0,
                               double tau, const IntegratorConfig& cfg,
                               bool pure_relative_offsupport);

}  // namespace detail

}  // namespace lvseasons
