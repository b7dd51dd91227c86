#include <doctest.h>

#include <cmath>

#include "lvseasons/poincare.hpp"
#include "lvseasons/presets.hpp"

using namespace lvseasons;

namespace {

double logistic_exact(double b, double a, double x0, double t) {
  return b * x0 / (a * x0 + (b - a * x0) * std::exp(-b * t));
}

IntegratorConfig tight_cfg() {
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  return cfg;
}

double nearest_multiplier_gap(const FixedPoint& fp, double target) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& lam : fp.multipliers)
    best = std::min(best, std::abs(lam - std::complex<double>(target, 0.0)));
  return best;
}

}  // namespace

TEST_CASE("the origin is a fixed point and its Jacobian is diagonal growth") {
  const auto& p = builtin_example(1).params;
  const auto cfg = tight_cfg();
  CHECK(poincare_map(p, Vec3::Zero(), cfg) == Vec3::Zero());
  CHECK(moment_vector(p, Vec3::Zero(), cfg) == Vec3::Zero());

  const auto d = derive(p);
  const Mat3 jac = poincare_jacobian(p, Vec3::Zero(), cfg);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j)
        CHECK(std::abs(jac(i, i) / std::exp(d.net_growth[i]) - 1.0) < 1e-8);
      else
        CHECK(jac(i, j) == 0.0);
    }
}

TEST_CASE("on an axis the period map composes decay with the logistic flow") {
  const auto& p = builtin_example(1).params;
  const auto cfg = tight_cfg();
  const auto d = derive(p);
  for (double x : {0.2, 0.9, 1.4, 3.0}) {
    const Vec3 y = poincare_map(p, Vec3(x, 0.0, 0.0), cfg);
    const double exact =
        logistic_exact(p.growth_rate[0], p.competition(0, 0),
                       d.survival[0] * x, p.good_duration());
    CHECK(std::abs(y[0] / exact - 1.0) < 1e-10);
    CHECK(y[1] == 0.0);
    CHECK(y[2] == 0.0);
  }
}

TEST_CASE("period-map Jacobian matches central differences") {
  const auto& p = builtin_example(1).params;
  const auto cfg = tight_cfg();
  const Vec3 x(0.3, 0.4, 0.8);
  const Mat3 jac = poincare_jacobian(p, x, cfg);
  Mat3 fd;
  for (int j = 0; j < 3; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    fd.col(j) = (poincare_map(p, xp, cfg) - poincare_map(p, xm, cfg)) /
                (2.0 * h);
  }
  const double scale = jac.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double ref = std::max(std::abs(jac(i, j)), 1e-3 * scale);
      CHECK(std::abs(fd(i, j) - jac(i, j)) < 1e-5 * ref);
    }
}

TEST_CASE("face starts keep the absent row of the Jacobian structural") {
  const auto& p = builtin_example(2).params;
  const Mat3 jac =
      poincare_jacobian(p, Vec3(0.4, 0.0, 1.1), IntegratorConfig{});
  CHECK(jac(1, 0) == 0.0);
  CHECK(jac(1, 2) == 0.0);
  CHECK(jac(1, 1) > 0.0);
}

TEST_CASE("axial fixed point: closed form, Newton and record agree") {
  const auto& p = builtin_example(1).params;
  const auto cfg = tight_cfg();
  const auto d = derive(p);

  const double q_formula = axial_point_closed_form(p, 0);
  const double q_newton = axial_point_newton(p, 0, cfg);
  CHECK(std::abs(q_newton - q_formula) < 1e-10 * std::max(1.0, q_formula));

  const auto fp = axial_fixed_point(p, 0, cfg);
  REQUIRE(fp.has_value());
  CHECK(fp->support == std::vector<int>{0});
  CHECK(fp->point[0] == doctest::Approx(q_formula).epsilon(1e-12));
  CHECK(fp->point[1] == 0.0);
  CHECK(fp->point[2] == 0.0);
  CHECK(fp->residual < 1e-9);

  // The moment of an axial point is net_growth / self-competition, and the
  // transversal logs reduce to the invasion-log formulas; both compared
  // against the integrated record.
  CHECK(std::abs(fp->moment[0] - 7.125) < 1e-8 * 7.125);
  CHECK(std::abs(fp->transversal_log[1] - d.invasion_log(0, 1)) < 1e-7);
  CHECK(std::abs(fp->transversal_log[2] - d.invasion_log(0, 2)) < 1e-7);

  // Spectrum: the in-axis multiplier is exactly exp(-r_1), the transversal
  // ones are exp of the invasion logs.
  CHECK(nearest_multiplier_gap(*fp, std::exp(-d.net_growth[0])) <
        1e-6 * std::exp(-d.net_growth[0]));
  CHECK(nearest_multiplier_gap(*fp, std::exp(0.5375)) < 1e-6 * std::exp(0.5375));
  CHECK(nearest_multiplier_gap(*fp, std::exp(-4.425)) < 1e-6 * std::exp(-4.425));
}

TEST_CASE("axial fixed point vanishes when net growth is nonpositive") {
  auto p = builtin_example(1).params;
  p.death_rate[0] = 10.0;  // r_1 = 1.95 - 35 < 0
  CHECK_FALSE(axial_fixed_point(p, 0, IntegratorConfig{}).has_value());
  CHECK(axial_fixed_point(p, 1, IntegratorConfig{}).has_value());
}

TEST_CASE("with no harsh phase the axial point is the static equilibrium") {
  auto p = builtin_example(1).params;
  p.good_fraction = 1.0;
  const double expected = p.growth_rate[0] / p.competition(0, 0);
  CHECK(axial_point_closed_form(p, 0) ==
        doctest::Approx(expected).epsilon(1e-14));
  const double q_newton = axial_point_newton(p, 0, tight_cfg());
  CHECK(std::abs(q_newton - expected) < 1e-10);
}

TEST_CASE("ring system has no planar fixed points") {
  const auto& p = builtin_example(1).params;
  IntegratorConfig cfg;
  for (int k = 0; k < 3; ++k)
    CHECK(planar_fixed_points(p, k, cfg).empty());
}

TEST_CASE("planar system carries exactly one coexistence point, plane 3") {
  const auto& p = builtin_example(2).params;
  IntegratorConfig cfg;
  const auto d = derive(p);

  CHECK(planar_fixed_points(p, 0, cfg).empty());
  CHECK(planar_fixed_points(p, 1, cfg).empty());

  const auto plane3 = planar_fixed_points(p, 2, cfg);
  REQUIRE(plane3.size() == 1);
  const auto& fp = plane3[0];
  CHECK(fp.support == std::vector<int>{0, 1});
  CHECK(fp.point[2] == 0.0);
  CHECK(fp.point[0] > 0.0);
  CHECK(fp.point[1] > 0.0);
  CHECK(fp.residual < 1e-9);

  // Moment components solve the 2x2 linear system, i.e. the pair moments.
  REQUIRE(d.pair_moment[0][1].has_value());
  REQUIRE(d.pair_moment[1][0].has_value());
  CHECK(std::abs(fp.moment[0] - *d.pair_moment[0][1]) <
        1e-7 * std::abs(*d.pair_moment[0][1]));
  CHECK(std::abs(fp.moment[1] - *d.pair_moment[1][0]) <
        1e-7 * std::abs(*d.pair_moment[1][0]));

  // Species 3 invades this point; formula value against the record.
  const double formula = d.net_growth[2] -
                         p.competition(2, 0) * *d.pair_moment[0][1] -
                         p.competition(2, 1) * *d.pair_moment[1][0];
  CHECK(formula > 0.0);
  CHECK(std::abs(fp.transversal_log[2] - formula) < 1e-6);
}

TEST_CASE("mirror-symmetric parameters give a symmetric planar point") {
  SeasonalParams p;
  p.period = 10.0;
  p.good_fraction = 0.65;
  p.death_rate = Vec3(0.1, 0.1, 0.1);
  p.growth_rate = Vec3(0.3, 0.3, 0.25);
  p.competition << 0.2, 0.1, 0.2,
                   0.1, 0.2, 0.2,
                   0.15, 0.15, 0.3;
  IntegratorConfig cfg;
  const auto plane3 = planar_fixed_points(p, 2, cfg);
  REQUIRE(plane3.size() == 1);
  CHECK(std::abs(plane3[0].point[0] - plane3[0].point[1]) < 1e-8);
}

TEST_CASE("dominance system: symmetric pair persists only without species 1") {
  const auto p = dominance_params();
  IntegratorConfig cfg;
  const auto plane1 = planar_fixed_points(p, 0, cfg);
  REQUIRE(plane1.size() == 1);
  CHECK(std::abs(plane1[0].moment[1] - 0.855 / 0.99) < 1e-6);
  CHECK(std::abs(plane1[0].moment[2] - 0.855 / 0.99) < 1e-6);
  CHECK(plane1[0].transversal_log[0] > 0.0);  // species 1 invades

  CHECK(planar_fixed_points(p, 1, cfg).empty());
  CHECK(planar_fixed_points(p, 2, cfg).empty());
}

TEST_CASE("ring system has an interior fixed point with the exact moment") {
  const auto& p = builtin_example(1).params;
  IntegratorConfig cfg;
  const auto interior = interior_fixed_points(p, cfg);
  REQUIRE(interior.size() == 1);
  const auto& fp = interior[0];
  CHECK(fp.support == std::vector<int>{0, 1, 2});
  CHECK(fp.residual < 1e-9);

  const auto d = derive(p);
  const Vec3 moment_exact =
      p.competition.fullPivLu().solve(d.net_growth);
  for (int i = 0; i < 3; ++i) {
    CHECK(moment_exact[i] > 0.0);
    CHECK(std::abs(fp.moment[i] - moment_exact[i]) <
          1e-7 * std::max(1.0, std::abs(moment_exact[i])));
    CHECK(fp.transversal_log[i] == 0.0);
  }
}

TEST_CASE("dominance system has no interior fixed point") {
  CHECK(interior_fixed_points(dominance_params(), IntegratorConfig{}).empty());
}

TEST_CASE("per-period growth factors stay positive on a state grid") {
  const auto& p = builtin_example(1).params;
  IntegratorConfig cfg;
  const double box = search_box_limit(p) * 2.0 / 1.05;
  const double levels[4] = {0.0, 0.25 * box, 0.5 * box, box};
  for (double x1 : levels)
    for (double x2 : levels)
      for (double x3 : levels) {
        const Vec3 x(x1, x2, x3);
        const Vec3 y = poincare_map(p, x, cfg);
        for (int i = 0; i < 3; ++i) {
          if (x[i] > 0.0)
            CHECK(y[i] > 0.0);
          else
            CHECK(y[i] == 0.0);
        }
      }
  // At face points the normal growth factor is the Jacobian diagonal.
  const Mat3 jac = poincare_jacobian(p, Vec3(0.0, 0.7, 0.4), cfg);
  CHECK(jac(0, 0) > 0.0);
}

TEST_CASE("negative states are rejected") {
  const auto& p = builtin_example(1).params;
  CHECK_THROWS_AS(poincare_map(p, Vec3(-0.1, 0.2, 0.3), IntegratorConfig{}),
                  std::invalid_argument);
}
