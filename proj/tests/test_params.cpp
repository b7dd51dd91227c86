#include <doctest.h>

#include <cmath>
#include <random>

#include "lvseasons/params.hpp"
#include "lvseasons/presets.hpp"

using namespace lvseasons;

namespace {

bool has_violation(const std::vector<ParamViolation>& v,
                   const std::string& code, const std::string& field) {
  for (const auto& item : v)
    if (item.code == code && item.field == field) return true;
  return false;
}

SeasonalParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 2.0);
  SeasonalParams p;
  p.period = 1.0 + u(rng);
  p.good_fraction = 0.3 + 0.35 * u(rng) / 2.0;
  for (int i = 0; i < 3; ++i) {
    p.death_rate[i] = u(rng);
    p.growth_rate[i] = u(rng);
    for (int j = 0; j < 3; ++j) p.competition(i, j) = u(rng);
  }
  return p;
}

}  // namespace

TEST_CASE("bundled parameter sets are admissible") {
  for (int n = 1; n <= 3; ++n)
    CHECK(validate_params(builtin_example(n).params).empty());
  CHECK(validate_params(dominance_params()).empty());
}

TEST_CASE("phi outside (0,1] is flagged as PhiOutOfRange") {
  auto p = builtin_example(1).params;
  p.good_fraction = 0.0;
  const auto v = validate_params(p);
  REQUIRE(v.size() == 1);
  CHECK(v[0].code == "PhiOutOfRange");
  CHECK(v[0].field == "phi");

  p.good_fraction = 1.0;  // boundary value is allowed
  CHECK(validate_params(p).empty());
  p.good_fraction = 1.25;
  CHECK(has_violation(validate_params(p), "PhiOutOfRange", "phi"));
}

TEST_CASE("zero and non-finite entries are flagged per field") {
  auto p = builtin_example(1).params;
  p.competition(1, 1) = 0.0;
  CHECK(has_violation(validate_params(p), "NonPositiveParameter", "a22"));

  p = builtin_example(1).params;
  p.growth_rate[1] = std::nan("");
  CHECK(has_violation(validate_params(p), "NonFiniteValue", "b2"));

  p = builtin_example(1).params;
  p.period = -1.0;
  p.death_rate[2] = 0.0;
  const auto v = validate_params(p);
  CHECK(v.size() == 2);
  CHECK(has_violation(v, "NonPositiveParameter", "omega"));
  CHECK(has_violation(v, "NonPositiveParameter", "mu3"));

  CHECK_THROWS_AS((void)checked(p), InvalidParams);
  try {
    (void)checked(p);
  } catch (const InvalidParams& e) {
    CHECK(e.violations.size() == 2);
  }
}

TEST_CASE("derived quantities match hand arithmetic for the ring system") {
  const auto d = derive(builtin_example(1).params);

  CHECK(d.net_growth[0] == doctest::Approx(1.425).epsilon(1e-12));
  CHECK(d.net_growth[1] == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(d.net_growth[2] == doctest::Approx(1.275).epsilon(1e-12));

  CHECK(d.survival[0] == doctest::Approx(std::exp(-0.15 * 3.5)).epsilon(1e-15));
  CHECK(d.survival[1] == doctest::Approx(std::exp(-0.2 * 3.5)).epsilon(1e-15));
  CHECK(d.survival[2] == doctest::Approx(std::exp(-0.1 * 3.5)).epsilon(1e-15));

  CHECK(d.invasion_log(0, 1) == doctest::Approx(0.5375).epsilon(1e-12));
  CHECK(d.invasion_log(0, 2) == doctest::Approx(-4.425).epsilon(1e-12));
  CHECK(d.invasion_log(1, 0) == doctest::Approx(-0.7625).epsilon(1e-12));
  CHECK(d.invasion_log(1, 2) == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(d.invasion_log(2, 0) == doctest::Approx(0.575).epsilon(1e-12));
  CHECK(d.invasion_log(2, 1) == doctest::Approx(-0.025).epsilon(1e-12));

  CHECK(d.cycle_discriminant ==
        doctest::Approx(0.1165390625).epsilon(1e-12));

  CHECK(d.axial_moment[0] == doctest::Approx(7.125).epsilon(1e-12));
  CHECK(d.axial_moment[1] == doctest::Approx(6.25).epsilon(1e-12));
  CHECK(d.axial_moment[2] == doctest::Approx(4.25).epsilon(1e-12));

  REQUIRE(d.pair_moment[0][1].has_value());
  REQUIRE(d.pair_moment[1][0].has_value());
  CHECK(*d.pair_moment[0][1] == doctest::Approx(-30.5).epsilon(1e-10));
  CHECK(*d.pair_moment[1][0] == doctest::Approx(21.5).epsilon(1e-10));
}

TEST_CASE("scaled invasion log equals a_ii times the plain one") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_params(rng);
    const auto d = derive(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        CHECK(d.invasion_log_scaled(i, j) ==
              doctest::Approx(p.competition(i, i) * d.invasion_log(i, j))
                  .epsilon(1e-12));
      }
  }
}

TEST_CASE("cycle discriminant is invariant under species relabeling") {
  std::mt19937_64 rng(11);
  const int cyc[3] = {1, 2, 0};
  const int swp[3] = {1, 0, 2};
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_params(rng);
    const double base = derive(p).cycle_discriminant;
    for (const int* perm : {cyc, swp}) {
      SeasonalParams q = p;
      for (int i = 0; i < 3; ++i) {
        q.death_rate[i] = p.death_rate[perm[i]];
        q.growth_rate[i] = p.growth_rate[perm[i]];
        for (int j = 0; j < 3; ++j)
          q.competition(i, j) = p.competition(perm[i], perm[j]);
      }
      CHECK(derive(q).cycle_discriminant ==
            doctest::Approx(base).epsilon(1e-10));
    }
  }
}

TEST_CASE("balanced seasons give exactly zero net growth") {
  SeasonalParams p = builtin_example(1).params;
  p.good_fraction = 0.5;
  p.death_rate = p.growth_rate;
  const auto d = derive(p);
  for (int i = 0; i < 3; ++i) CHECK(d.net_growth[i] == 0.0);
}

TEST_CASE("exactly singular pair minors leave the pair moment undefined") {
  const auto d = derive(dominance_params());
  CHECK_FALSE(d.pair_moment[0][1].has_value());
  CHECK_FALSE(d.pair_moment[1][0].has_value());
  CHECK_FALSE(d.pair_moment[0][2].has_value());
  CHECK_FALSE(d.pair_moment[2][0].has_value());
  REQUIRE(d.pair_moment[1][2].has_value());
  REQUIRE(d.pair_moment[2][1].has_value());
  CHECK(*d.pair_moment[1][2] == doctest::Approx(0.855 / 0.99).epsilon(1e-12));
  CHECK(*d.pair_moment[2][1] == doctest::Approx(0.855 / 0.99).epsilon(1e-12));
}
