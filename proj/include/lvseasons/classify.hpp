#pragma once

#include <cstdint>
#include <optional>

#include "lvseasons/lp.hpp"
#include "lvseasons/poincare.hpp"

namespace lvseasons {

// Complete inventory of the period-map fixed points on the boundary of the
// positive cone (origin excluded): up to three axial points and the interior
// fixed points of each coordinate plane. `hyperbolic` is false when any
// multiplier of any record has |log modulus| <= 1e-8. `cycle` marks the
// classical heteroclinic ring: all three axial points present, no planar
// points, and the invasion pattern cyclic (Forward = 1 invades 2's axis,
// 2 invades 3's, 3 invades 1's losing the reverse directions; Backward is
// the mirror).
struct BoundaryPortrait {
  std::array<std::optional<FixedPoint>, 3> axial;
  std::array<std::vector<FixedPoint>, 3> planar;  // [k]: plane x_k = 0
  bool hyperbolic = true;
  enum class Cycle { None, Forward, Backward } cycle = Cycle::None;
};

BoundaryPortrait boundary_portrait(const SeasonalParams& params,
                                   const IntegratorConfig& cfg,
                                   std::uint64_t seed = 0);

// 0-based indices of species whose per-period net growth is <= 0; each such
// species dies out on its own axis, so coexistence is impossible.
std::vector<int> extinction_check(const DerivedQuantities& d);

// Average-Lyapunov weight search over the boundary fixed points. Row theta
// contributes the vector of transversal log multipliers (zeros on support).
// permanence.margin > 0 certifies permanence; impermanence.margin > 0 (the
// search run on negated rows) certifies impermanence.
struct LyapunovFeasibility {
  WeightCertificate permanence;
  WeightCertificate impermanence;
  std::vector<Vec3> rows;  // one per boundary fixed point, portrait order
};

LyapunovFeasibility average_lyapunov_test(const BoundaryPortrait& portrait);

struct PermanenceVerdict {
  enum class Kind { Permanent, Impermanent, Indeterminate } verdict;
  enum class Witness {
    Extinction,              // some net_growth[i] <= 0
    NonHyperbolicBoundary,   // portrait not hyperbolic, criteria silent
    AttractingBoundaryPoint, // a boundary fixed point attracts
    HeteroclinicCycle,       // cycle present, sign of discriminant decides
    LyapunovWeights,         // LP margin certificate
    Inconclusive             // both LP margins nonpositive
  } witness;
  std::vector<int> extinct_species;  // always present, possibly empty
  std::optional<FixedPoint> attracting_point;
  std::optional<WeightCertificate> certificate;
  std::optional<LyapunovFeasibility> feasibility;
  DerivedQuantities derived;
  std::optional<BoundaryPortrait> portrait;
};

PermanenceVerdict classify_permanence(const SeasonalParams& params,
                                      const IntegratorConfig& cfg,
                                      std::uint64_t seed = 0);

}  // namespace lvseasons
