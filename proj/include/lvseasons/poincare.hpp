#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lvseasons/flow.hpp"

namespace lvseasons {

// A fixed point of the period map restricted to a coordinate face.
// `point` has exactly the coordinates in `support` positive (0-based
// indices); `moment` is the time integral of the growth-phase state over one
// period started at the point. transversal_log[i] = net_growth[i] -
// (competition * moment)[i] is the per-period log growth of absent species i
// (zero for supported species); its exponential is the corresponding
// multiplier of the period-map Jacobian. `multipliers` is the full spectrum
// of that Jacobian, assembled from its exact block-triangular face
// structure.
struct FixedPoint {
  std::vector<int> support;
  Vec3 point = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
  Vec3 transversal_log = Vec3::Zero();
  std::array<std::complex<double>, 3> multipliers{};
  double residual = 0.0;
};

// One full period: harsh phase then growth phase.
Vec3 poincare_map(const SeasonalParams& params, const Vec3& x,
                  const IntegratorConfig& cfg);

// Exact derivative of poincare_map via the variational equation.
Mat3 poincare_jacobian(const SeasonalParams& params, const Vec3& x,
                       const IntegratorConfig& cfg);

// Time integral of the growth-phase state over one period started at x.
Vec3 moment_vector(const SeasonalParams& params, const Vec3& x,
                   const IntegratorConfig& cfg);

// Per-period log growth factor of species i at a face fixed point, from the
// moment identity; exp of it is the transversal multiplier.
double transversal_log_multiplier(const SeasonalParams& params,
                                  const FixedPoint& fp, int i);

// Closed form for the single positive coordinate of the axial fixed point on
// axis i; requires net_growth[i] > 0 (the periodic logistic map has a unique
// positive fixed point exactly then).
double axial_point_closed_form(const SeasonalParams& params, int axis);

// Independent location of the same coordinate by Newton iteration on the
// period map restricted to the axis.
double axial_point_newton(const SeasonalParams& params, int axis,
                          const IntegratorConfig& cfg);

// Empty when net_growth[axis] <= 0. Cross-checks the closed form against
// Newton and throws NewtonDivergence if they disagree.
std::optional<FixedPoint> axial_fixed_point(const SeasonalParams& params,
                                            int axis,
                                            const IntegratorConfig& cfg);

// Fixed points with support {i, j} where species `absent` is missing.
// Deterministic for fixed seed; sorted lexicographically by coordinates.
std::vector<FixedPoint> planar_fixed_points(const SeasonalParams& params,
                                            int absent,
                                            const IntegratorConfig& cfg,
                                            std::uint64_t seed = 0);

// Fixed points with all three coordinates positive.
std::vector<FixedPoint> interior_fixed_points(const SeasonalParams& params,
                                              const IntegratorConfig& cfg,
                                              std::uint64_t seed = 0);

// Builds the full record (moment, multipliers, residual) for a fixed point
// already located at `point` with the given support. Runs at tolerances
// tightened below cfg so record invariants hold at extreme parameter sets.
FixedPoint assemble_fixed_point(const SeasonalParams& params,
                                const Vec3& point,
                                const std::vector<int>& support,
                                const IntegratorConfig& cfg);

// 1.05 times the largest axial fixed-point coordinate: every fixed point of
// the period map lies inside [0, box]^3.
double search_box_limit(const SeasonalParams& params);

}  // namespace lvseasons
