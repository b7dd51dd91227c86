#include <doctest.h>

#include <cmath>

#include "lvseasons/integrator.hpp"

using namespace lvseasons;

namespace {
using Vec1 = Eigen::Matrix<double, 1, 1>;
using Vec2 = Eigen::Matrix<double, 2, 1>;
}  // namespace

TEST_CASE("exponential decay matches the closed form") {
  IntegratorConfig cfg;
  auto rhs = [](double, const Vec1& y, Vec1& dy) { dy[0] = -y[0]; };
  Vec1 y0;
  y0[0] = 1.0;
  const Vec1 y = integrate<1>(rhs, y0, 0.0, 3.0, cfg);
  CHECK(y[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
}

TEST_CASE("harmonic oscillator holds its amplitude") {
  IntegratorConfig cfg;
  auto rhs = [](double, const Vec2& y, Vec2& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  Vec2 y0;
  y0 << 1.0, 0.0;
  const double t1 = 20.0;
  const Vec2 y = integrate<2>(rhs, y0, 0.0, t1, cfg);
  CHECK(y[0] == doctest::Approx(std::cos(t1)).epsilon(1e-8));
  CHECK(y[1] == doctest::Approx(-std::sin(t1)).epsilon(1e-8));
}

TEST_CASE("zero absolute tolerance keeps relative accuracy at tiny scales") {
  // y' = -50 y reaches ~3.7e-44 at t = 2; under a mixed tolerance the
  // component would fall below the absolute floor and lose all relative
  // accuracy. With atol pinned to zero the error stays relative throughout.
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-10;
  auto rhs = [](double, const Vec1& y, Vec1& dy) { dy[0] = -50.0 * y[0]; };
  Vec1 y0, atol;
  y0[0] = 1.0;
  atol[0] = 0.0;
  const Vec1 y = integrate<1>(rhs, y0, 0.0, 2.0, cfg, &atol);
  const double exact = std::exp(-100.0);
  CHECK(std::abs(y[0] / exact - 1.0) < 1e-6);
}

TEST_CASE("zero-length interval returns the initial state unchanged") {
  IntegratorConfig cfg;
  auto rhs = [](double, const Vec1& y, Vec1& dy) { dy[0] = y[0]; };
  Vec1 y0;
  y0[0] = 0.7;
  const Vec1 y = integrate<1>(rhs, y0, 1.5, 1.5, cfg);
  CHECK(y[0] == 0.7);
}

TEST_CASE("max_step is honored") {
  IntegratorConfig cfg;
  cfg.max_step = 1e-3;
  int evals = 0;
  auto rhs = [&](double, const Vec1& y, Vec1& dy) {
    ++evals;
    dy[0] = -y[0];
  };
  Vec1 y0;
  y0[0] = 1.0;
  integrate<1>(rhs, y0, 0.0, 1.0, cfg);
  // 1000 steps minimum, 6 fresh evaluations each under FSAL.
  CHECK(evals >= 6000);
}

TEST_CASE("a finite-time singularity rejects down to step underflow") {
  IntegratorConfig cfg;
  auto rhs = [](double t, const Vec1& y, Vec1& dy) {
    dy[0] = y[0] / (1.0 - t);
  };
  Vec1 y0;
  y0[0] = 1.0;
  CHECK_THROWS_AS(integrate<1>(rhs, y0, 0.0, 2.0, cfg), std::runtime_error);
}

TEST_CASE("invalid tolerances are rejected") {
  IntegratorConfig cfg;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.abs_tol = 1e-12;
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("backward intervals are rejected") {
  IntegratorConfig cfg;
  auto rhs = [](double, const Vec1& y, Vec1& dy) { dy[0] = y[0]; };
  Vec1 y0;
  y0[0] = 1.0;
  CHECK_THROWS_AS(integrate<1>(rhs, y0, 1.0, 0.0, cfg),
                  std::invalid_argument);
}
