#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lvseasons/common.hpp"

namespace lvseasons {

// One period of length `period` splits into a harsh phase of duration
// (1 - good_fraction) * period, during which species i decays at rate
// death_rate[i], followed by a growth phase of duration
// good_fraction * period governed by competitive Lotka-Volterra dynamics
//   x_i' = x_i * (growth_rate[i] - sum_j competition(i,j) * x_j).
struct SeasonalParams {
  double period = 0.0;         // omega > 0
  double good_fraction = 0.0;  // phi in (0, 1]
  Vec3 death_rate = Vec3::Zero();
  Vec3 growth_rate = Vec3::Zero();
  Mat3 competition = Mat3::Zero();

  double bad_duration() const { return (1.0 - good_fraction) * period; }
  double good_duration() const { return good_fraction * period; }
};

struct ParamViolation {
  std::string code;   // NonPositiveParameter | PhiOutOfRange | NonFiniteValue
  std::string field;  // e.g. "omega", "phi", "mu1", "b2", "a23"
  double value = 0.0;
};

struct InvalidParams : std::invalid_argument {
  std::vector<ParamViolation> violations;
  explicit InvalidParams(std::vector<ParamViolation> v);
};

// Empty result means the parameter set is admissible.
std::vector<ParamViolation> validate_params(const SeasonalParams& raw);

// Returns the input unchanged or throws InvalidParams listing every issue.
const SeasonalParams& checked(const SeasonalParams& raw);

// Scalar summaries of one full period. net_growth[i] is the per-period log
// growth rate of species i near extinction; survival[i] the fraction of x_i
// left after the harsh phase. invasion_log(i,j) is the per-period log growth
// of invader j at the axial fixed point of resident i (zero diagonal), and
// invasion_log_scaled(i,j) = competition(i,i) * invasion_log(i,j) is its
// positively-scaled form computed by an independent formula. pair_moment(i,j)
// is the moment of species i in the planar coexistence solution for the pair
// {i,j}; it is left empty when the 2x2 competition minor is exactly singular.
// cycle_discriminant is the sum of the two triple products of invasion logs
// whose sign decides permanence when the boundary carries a heteroclinic
// cycle. axial_moment[i] is the moment of the axial fixed point itself.
struct DerivedQuantities {
  Vec3 net_growth = Vec3::Zero();
  Vec3 survival = Vec3::Zero();
  Mat3 invasion_log = Mat3::Zero();
  Mat3 invasion_log_scaled = Mat3::Zero();
  std::array<std::array<std::optional<double>, 3>, 3> pair_moment{};
  double cycle_discriminant = 0.0;
  Vec3 axial_moment = Vec3::Zero();
};

DerivedQuantities derive(const SeasonalParams& params);

}  // namespace lvseasons
