#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "lvseasons/poincare.hpp"

namespace lvseasons {

struct OrbitRecord {
  std::vector<Vec3> points;    // points[k] = k-th period-map iterate, [0] = x0
  std::size_t transient_cut;   // index of the first post-transient point
};

// n period-map iterates from x0 (n+1 points stored). The transient cut is
// half the orbit, at least 500, never past the end.
OrbitRecord iterate_orbit(const SeasonalParams& params, const Vec3& x0, int n,
                          const IntegratorConfig& cfg);

struct CurveDiagnostics {
  double diameter = 0.0;            // max pairwise distance, post-transient
  double min_gap_to_fixed_points = 0.0;
  double closure_defect = 0.0;      // Hausdorff distance between orbit halves
  double rotation_number = 0.0;     // orientation-folded, in [0, 1/2]
  double rotation_defect = 0.0;     // |estimate(first half) - estimate(second)|
};

struct AttractorReport {
  enum class Kind { FixedPoint, ClosedCurve, Unresolved } kind;
  std::optional<Vec3> fixed_point;
  std::optional<CurveDiagnostics> curve;
  std::size_t iterations_used = 0;  // map iterations behind the verdict
};

// Classifies the post-transient tail. FixedPoint: successive steps below
// 1e-9 and (when `reevaluate` is given) a true map residual below 1e-8.
// ClosedCurve: diameter above 1e-3, clearance above 1e-3 from every known
// fixed point, and the two halves of the tail within 5% of the diameter of
// each other in Hausdorff distance. Anything else is Unresolved.
AttractorReport attractor_detect(
    const OrbitRecord& orbit, const std::vector<Vec3>& known_fixed_points,
    const std::function<Vec3(const Vec3&)>& reevaluate = {});

struct RotationEstimate {
  double value = 0.0;   // folded into [0, 1/2]
  double half_window_defect = 0.0;
};

// Winding-number estimate of the post-transient tail around `center`,
// measured in the best-fit plane of the point cloud (principal components of
// its covariance). The projection-plane basis carries no canonical
// orientation, so the estimate is folded: rho and 1 - rho are identified.
// Throws DegenerateProjection when the cloud has rank < 2.
RotationEstimate rotation_number_estimate(const OrbitRecord& orbit,
                                          const Vec3& center);

}  // namespace lvseasons
