#include "lvseasons/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lvseasons {

namespace {

using PointSpan = std::vector<Vec3>::const_iterator;

double diameter_of(PointSpan first, PointSpan last) {
  double best = 0.0;
  for (auto a = first; a != last; ++a)
    for (auto b = std::next(a); b != last; ++b)
      best = std::max(best, (*a - *b).norm());
  return best;
}

double hausdorff(PointSpan a0, PointSpan a1, PointSpan b0, PointSpan b1) {
  auto one_sided = [](PointSpan f0, PointSpan f1, PointSpan g0, PointSpan g1) {
    double worst = 0.0;
    for (auto p = f0; p != f1; ++p) {
      double nearest = std::numeric_limits<double>::infinity();
      for (auto q = g0; q != g1; ++q)
        nearest = std::min(nearest, (*p - *q).norm());
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(one_sided(a0, a1, b0, b1), one_sided(b0, b1, a0, a1));
}

double fold_rotation(double v) {
  const double f = v - std::floor(v);
  return std::min(f, 1.0 - f);
}

}  // namespace

OrbitRecord iterate_orbit(const SeasonalParams& params, const Vec3& x0, int n,
                          const IntegratorConfig& cfg) {
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  OrbitRecord orbit;
  orbit.points.reserve(n + 1);
  orbit.points.push_back(x0);
  Vec3 x = x0;
  for (int k = 0; k < n; ++k) {
    x = poincare_map(params, x, cfg);
    orbit.points.push_back(x);
  }
  orbit.transient_cut = std::min<std::size_t>(
      std::max<std::size_t>(n / 2, 500), orbit.points.size() - 1);
  return orbit;
}

AttractorReport attractor_detect(
    const OrbitRecord& orbit, const std::vector<Vec3>& known_fixed_points,
    const std::function<Vec3(const Vec3&)>& reevaluate) {
  const auto& pts = orbit.points;
  if (pts.size() < 2) throw std::invalid_argument("orbit too short");
  AttractorReport report;
  report.iterations_used = pts.size() - 1;

  // Fixed point: the tail has stopped moving; certify against the true map
  // when a reevaluator is supplied, otherwise against the last step.
  const std::size_t window = std::min<std::size_t>(10, pts.size() - 1);
  double worst_step = 0.0;
  for (std::size_t k = pts.size() - window; k < pts.size(); ++k)
    worst_step = std::max(
        worst_step, (pts[k] - pts[k - 1]).lpNorm<Eigen::Infinity>());
  if (worst_step < 1e-9) {
    const Vec3 x = pts.back();
    const double residual =
        reevaluate ? (reevaluate(x) - x).lpNorm<Eigen::Infinity>()
                   : worst_step;
    if (residual < 1e-8) {
      report.kind = AttractorReport::Kind::FixedPoint;
      report.fixed_point = x;
      return report;
    }
  }

  const auto tail0 = pts.begin() + orbit.transient_cut;
  const auto tail1 = pts.end();
  const auto m = static_cast<std::size_t>(tail1 - tail0);
  if (m >= 16) {
    CurveDiagnostics diag;
    diag.diameter = diameter_of(tail0, tail1);
    diag.min_gap_to_fixed_points = std::numeric_limits<double>::infinity();
    for (const auto& fp : known_fixed_points)
      for (auto p = tail0; p != tail1; ++p)
        diag.min_gap_to_fixed_points =
            std::min(diag.min_gap_to_fixed_points, (*p - fp).norm());
    const auto mid = tail0 + m / 2;
    diag.closure_defect = hausdorff(tail0, mid, mid, tail1);

    const bool is_curve = diag.diameter > 1e-3 &&
                          diag.min_gap_to_fixed_points > 1e-3 &&
                          diag.closure_defect < 0.05 * diag.diameter;
    if (is_curve) {
      // Winding center: an interior fixed point when one is known (the
      // curve encircles it), otherwise the tail centroid.
      Vec3 centroid = Vec3::Zero();
      for (auto p = tail0; p != tail1; ++p) centroid += *p;
      centroid /= static_cast<double>(m);
      Vec3 center = centroid;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& fp : known_fixed_points) {
        if (!(fp.array() > 0.0).all()) continue;
        const double dist = (fp - centroid).norm();
        if (dist < best) {
          best = dist;
          center = fp;
        }
      }
      try {
        const auto rot = rotation_number_estimate(orbit, center);
        diag.rotation_number = rot.value;
        diag.rotation_defect = rot.half_window_defect;
      } catch (const DegenerateProjection&) {
        diag.rotation_number = 0.0;
        diag.rotation_defect = std::numeric_limits<double>::infinity();
      }
      report.kind = AttractorReport::Kind::ClosedCurve;
      report.curve = diag;
      return report;
    }
  }

  report.kind = AttractorReport::Kind::Unresolved;
  return report;
}

RotationEstimate rotation_number_estimate(const OrbitRecord& orbit,
                                          const Vec3& center) {
  const auto& pts = orbit.points;
  if (pts.size() <= orbit.transient_cut)
    throw DegenerateProjection("empty post-transient tail");
  const auto tail0 = pts.begin() + orbit.transient_cut;
  const auto tail1 = pts.end();
  const auto m = static_cast<std::size_t>(tail1 - tail0);
  if (m < 8) throw DegenerateProjection("too few points for a winding estimate");

  Vec3 mean = Vec3::Zero();
  for (auto p = tail0; p != tail1; ++p) mean += *p;
  mean /= static_cast<double>(m);
  Mat3 cov = Mat3::Zero();
  for (auto p = tail0; p != tail1; ++p) {
    const Vec3 d = *p - mean;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(m);

  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  const Vec3 evals = eig.eigenvalues();  // ascending
  if (!(evals[2] > 0.0) || evals[1] <= 1e-16 * evals[2])
    throw DegenerateProjection("point cloud has rank < 2");
  const Vec3 e1 = eig.eigenvectors().col(2);
  const Vec3 e2 = eig.eigenvectors().col(1);

  std::vector<double> angles;
  angles.reserve(m);
  for (auto p = tail0; p != tail1; ++p) {
    const Vec3 d = *p - center;
    const double u = d.dot(e1), v = d.dot(e2);
    if (std::abs(u) < 1e-300 && std::abs(v) < 1e-300)
      throw DegenerateProjection("orbit point coincides with the center");
    angles.push_back(std::atan2(v, u));
  }

  const double two_pi = 2.0 * std::numbers::pi;
  auto winding = [&](std::size_t first, std::size_t last) {
    double sum = 0.0;
    for (std::size_t k = first + 1; k <= last; ++k) {
      double d = angles[k] - angles[k - 1];
      d -= two_pi * std::round(d / two_pi);
      sum += d;
    }
    return sum / (two_pi * static_cast<double>(last - first));
  };

  RotationEstimate est;
  est.value = fold_rotation(winding(0, m - 1));
  const std::size_t half = (m - 1) / 2;
  est.half_window_defect = std::abs(fold_rotation(winding(0, half)) -
                                    fold_rotation(winding(half, m - 1)));
  return est;
}

}  // namespace lvseasons
