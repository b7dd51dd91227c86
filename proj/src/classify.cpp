#include "lvseasons/classify.hpp"

#include <cmath>

namespace lvseasons {

namespace {

bool attracting(const FixedPoint& fp) {
  for (const auto& lam : fp.multipliers)
    if (!(std::abs(lam) < 1.0)) return false;
  return true;
}

bool record_hyperbolic(const FixedPoint& fp) {
  for (const auto& lam : fp.multipliers) {
    const double mod = std::abs(lam);
    if (mod == 0.0) continue;  // infinitely attracting transversal direction
    if (std::abs(std::log(mod)) <= 1e-8) return false;
  }
  return true;
}

template <class Fn>
void for_each_boundary(const BoundaryPortrait& p, Fn&& fn) {
  for (const auto& fp : p.axial)
    if (fp) fn(*fp);
  for (const auto& plane : p.planar)
    for (const auto& fp : plane) fn(fp);
}

}  // namespace

std::vector<int> extinction_check(const DerivedQuantities& d) {
  std::vector<int> out;
  for (int i = 0; i < 3; ++i)
    if (d.net_growth[i] <= 0.0) out.push_back(i);
  return out;
}

BoundaryPortrait boundary_portrait(const SeasonalParams& params,
                                   const IntegratorConfig& cfg,
                                   std::uint64_t seed) {
  const auto d = derive(params);
  BoundaryPortrait portrait;
  for (int i = 0; i < 3; ++i)
    portrait.axial[i] = axial_fixed_point(params, i, cfg);
  for (int k = 0; k < 3; ++k)
    portrait.planar[k] = planar_fixed_points(params, k, cfg, seed);

  portrait.hyperbolic = true;
  for_each_boundary(portrait, [&](const FixedPoint& fp) {
    if (!record_hyperbolic(fp)) portrait.hyperbolic = false;
  });

  const bool all_axial =
      portrait.axial[0] && portrait.axial[1] && portrait.axial[2];
  const bool no_planar = portrait.planar[0].empty() &&
                         portrait.planar[1].empty() &&
                         portrait.planar[2].empty();
  if (all_axial && no_planar) {
    const Mat3& w = d.invasion_log;
    const bool fwd = w(0, 1) > 0 && w(1, 2) > 0 && w(2, 0) > 0 &&
                     w(1, 0) < 0 && w(2, 1) < 0 && w(0, 2) < 0;
    const bool bwd = w(0, 2) > 0 && w(2, 1) > 0 && w(1, 0) > 0 &&
                     w(2, 0) < 0 && w(1, 2) < 0 && w(0, 1) < 0;
    if (fwd)
      portrait.cycle = BoundaryPortrait::Cycle::Forward;
    else if (bwd)
      portrait.cycle = BoundaryPortrait::Cycle::Backward;
  }
  return portrait;
}

LyapunovFeasibility average_lyapunov_test(const BoundaryPortrait& portrait) {
  LyapunovFeasibility feas;
  for_each_boundary(portrait, [&](const FixedPoint& fp) {
    feas.rows.push_back(fp.transversal_log);
  });
  feas.permanence = max_min_weight_margin(feas.rows);
  std::vector<Vec3> negated;
  negated.reserve(feas.rows.size());
  for (const auto& row : feas.rows) negated.push_back(-row);
  feas.impermanence = max_min_weight_margin(negated);
  return feas;
}

PermanenceVerdict classify_permanence(const SeasonalParams& params,
                                      const IntegratorConfig& cfg,
                                      std::uint64_t seed) {
  PermanenceVerdict v;
  v.derived = derive(params);

  v.extinct_species = extinction_check(v.derived);
  if (!v.extinct_species.empty()) {
    v.verdict = PermanenceVerdict::Kind::Impermanent;
    v.witness = PermanenceVerdict::Witness::Extinction;
    return v;
  }

  v.portrait = boundary_portrait(params, cfg, seed);
  if (!v.portrait->hyperbolic) {
    v.verdict = PermanenceVerdict::Kind::Indeterminate;
    v.witness = PermanenceVerdict::Witness::NonHyperbolicBoundary;
    return v;
  }

  std::optional<FixedPoint> attractor;
  for_each_boundary(*v.portrait, [&](const FixedPoint& fp) {
    if (!attractor && attracting(fp)) attractor = fp;
  });
  if (attractor) {
    v.verdict = PermanenceVerdict::Kind::Impermanent;
    v.witness = PermanenceVerdict::Witness::AttractingBoundaryPoint;
    v.attracting_point = attractor;
    return v;
  }

  if (v.portrait->cycle != BoundaryPortrait::Cycle::None) {
    v.witness = PermanenceVerdict::Witness::HeteroclinicCycle;
    const double disc = v.derived.cycle_discriminant;
    v.verdict = disc > 0.0   ? PermanenceVerdict::Kind::Permanent
                : disc < 0.0 ? PermanenceVerdict::Kind::Impermanent
                             : PermanenceVerdict::Kind::Indeterminate;
    return v;
  }

  v.feasibility = average_lyapunov_test(*v.portrait);
  if (v.feasibility->permanence.margin > 0.0) {
    v.verdict = PermanenceVerdict::Kind::Permanent;
    v.witness = PermanenceVerdict::Witness::LyapunovWeights;
    v.certificate = v.feasibility->permanence;
  } else if (v.feasibility->impermanence.margin > 0.0) {
    v.verdict = PermanenceVerdict::Kind::Impermanent;
    v.witness = PermanenceVerdict::Witness::LyapunovWeights;
    v.certificate = v.feasibility->impermanence;
  } else {
    v.verdict = PermanenceVerdict::Kind::Indeterminate;
    v.witness = PermanenceVerdict::Witness::Inconclusive;
  }
  return v;
}

}  // namespace lvseasons
