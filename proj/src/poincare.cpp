#include "lvseasons/poincare.hpp"

#include <algorithm>
#include <cmath>

namespace lvseasons {

namespace {

Vec3 survival_vec(const SeasonalParams& p) {
  Vec3 c;
  for (int i = 0; i < 3; ++i)
    c[i] = std::exp(-p.death_rate[i] * p.bad_duration());
  return c;
}

// Variational run restricted to a face: the sensitivity block over the
// support closes on itself because columns of absent species vanish along
// the face. State is [x (pinned), row-major K x K block].
template <int K>
struct FaceRun {
  Vec3 x;
  Eigen::Matrix<double, K, K> block;
};

template <int K>
FaceRun<K> face_variational(const SeasonalParams& p, const Vec3& x0,
                            const std::array<int, K>& idx, double tau,
                            const IntegratorConfig& cfg) {
  constexpr int M = 3 + K * K;
  using VecM = Eigen::Matrix<double, M, 1>;
  const Mat3& a = p.competition;
  const Vec3& b = p.growth_rate;
  const auto mask = detail::support_of(x0);

  auto rhs = [&](double, const VecM& y, VecM& dy) {
    const Vec3 x = y.template head<3>();
    const Vec3 g = b - a * x;
    for (int i = 0; i < 3; ++i) dy[i] = mask[i] ? x[i] * g[i] : 0.0;
    for (int s = 0; s < K; ++s) {
      const int is = idx[s];
      for (int l = 0; l < K; ++l) {
        double acc = 0.0;
        for (int m = 0; m < K; ++m) {
          const int im = idx[m];
          const double u = (is == im ? g[is] : 0.0) - x[is] * a(is, im);
          acc += u * y[3 + K * m + l];
        }
        dy[3 + K * s + l] = acc;
      }
    }
  };

  VecM y = VecM::Zero();
  y.template head<3>() = x0;
  for (int s = 0; s < K; ++s) y[3 + (K + 1) * s] = 1.0;
  y = integrate<M>(rhs, y, 0.0, tau, cfg);

  FaceRun<K> run;
  run.x = y.template head<3>();
  for (int i = 0; i < 3; ++i)
    if (!mask[i]) run.x[i] = 0.0;
  for (int s = 0; s < K; ++s)
    for (int l = 0; l < K; ++l) run.block(s, l) = y[3 + K * s + l];
  return run;
}

// Newton iteration for a fixed point of the period map restricted to the
// face spanned by idx. Damped to stay in the open face; returns false on
// divergence, leaving the point unspecified.
template <int K>
bool newton_face(const SeasonalParams& p, const std::array<int, K>& idx,
                 Vec3& theta, const IntegratorConfig& cfg, double box) {
  using MatK = Eigen::Matrix<double, K, K>;
  using VecK = Eigen::Matrix<double, K, 1>;
  const Vec3 c = survival_vec(p);
  const double good = p.good_duration();

  double prev_res = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 0; it < 60; ++it) {
    const Vec3 lx = linear_phase_map(p, theta, p.bad_duration());
    const auto run = face_variational<K>(p, lx, idx, good, cfg);
    VecK g;
    for (int s = 0; s < K; ++s) g[s] = run.x[idx[s]] - theta[idx[s]];
    const double res = g.template lpNorm<Eigen::Infinity>();
    const double scale =
        std::max(1.0, theta.template lpNorm<Eigen::Infinity>());

    MatK jac = run.block;
    for (int s = 0; s < K; ++s)
      for (int l = 0; l < K; ++l) jac(s, l) *= c[idx[l]];
    jac -= MatK::Identity();

    Eigen::FullPivLU<MatK> lu(jac);
    if (!lu.isInvertible()) return false;
    VecK step = lu.solve(-g);

    const double cap = 5.0 * scale;
    const double len = step.template lpNorm<Eigen::Infinity>();
    if (len > cap) step *= cap / len;

    double alpha = 1.0;
    for (int h = 0; h < 50; ++h) {
      bool positive = true;
      for (int s = 0; s < K; ++s)
        if (theta[idx[s]] + alpha * step[s] <= 0.0) positive = false;
      if (positive) break;
      alpha *= 0.5;
      if (h == 49) return false;
    }
    for (int s = 0; s < K; ++s) theta[idx[s]] += alpha * step[s];

    if (theta.template lpNorm<Eigen::Infinity>() > 50.0 * box) return false;
    if (alpha * len < 1e-11 * scale) return true;

    if (res >= 0.5 * prev_res) {
      if (++stalled >= 10) return false;
    } else {
      stalled = 0;
    }
    prev_res = res;
  }
  return false;
}

bool newton_dispatch(const SeasonalParams& p, const std::vector<int>& support,
                     Vec3& theta, const IntegratorConfig& cfg, double box) {
  switch (support.size()) {
    case 1:
      return newton_face<1>(p, {support[0]}, theta, cfg, box);
    case 2:
      return newton_face<2>(p, {support[0], support[1]}, theta, cfg, box);
    case 3:
      return newton_face<3>(p, {support[0], support[1], support[2]}, theta,
                            cfg, box);
    default:
      return false;
  }
}

IntegratorConfig loosened(const IntegratorConfig& cfg) {
  IntegratorConfig out = cfg;
  out.rel_tol = std::max(cfg.rel_tol, 1e-8);
  out.abs_tol = std::max(cfg.abs_tol, 1e-10);
  return out;
}

double residual_gate(const Vec3& theta) {
  return 1e-9 * std::max(1.0, theta.lpNorm<Eigen::Infinity>());
}

double interior_gate(const Vec3& theta) {
  return 1e-8 * std::max(1.0, theta.lpNorm<Eigen::Infinity>());
}

// Van der Corput radical inverse; Halton points shifted by a hash of the
// seed (deterministic quasi-random search seeds).
double radical_inverse(int base, std::uint64_t n) {
  double inv = 1.0 / base, f = inv, v = 0.0;
  while (n) {
    v += f * static_cast<double>(n % base);
    n /= base;
    f *= inv;
  }
  return v;
}

double seed_shift(std::uint64_t seed, int dim) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (dim + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Search (loose tolerance), polish (caller tolerance) and gate one seed;
// appends to `found` on success.
void try_seed(const SeasonalParams& p, const std::vector<int>& support,
              Vec3 seed_point, const IntegratorConfig& cfg, double box,
              std::vector<Vec3>& found) {
  Vec3 theta = seed_point;
  if (!newton_dispatch(p, support, theta, loosened(cfg), box)) return;
  if (!newton_dispatch(p, support, theta, cfg, box)) return;

  const double gate = interior_gate(theta);
  for (int s : support)
    if (theta[s] < gate) return;
  found.push_back(theta);
}

std::vector<FixedPoint> gate_and_assemble(const SeasonalParams& p,
                                          const DerivedQuantities& d,
                                          const std::vector<int>& support,
                                          std::vector<Vec3>& candidates,
                                          const IntegratorConfig& cfg) {
  std::sort(candidates.begin(), candidates.end(),
            [](const Vec3& u, const Vec3& v) {
              return std::lexicographical_compare(u.data(), u.data() + 3,
                                                  v.data(), v.data() + 3);
            });
  std::vector<Vec3> unique_pts;
  for (const auto& pt : candidates) {
    bool dup = false;
    for (const auto& kept : unique_pts)
      if ((pt - kept).lpNorm<Eigen::Infinity>() < 1e-6) dup = true;
    if (!dup) unique_pts.push_back(pt);
  }

  const double r_scale = std::max(1.0, d.net_growth.lpNorm<Eigen::Infinity>());
  std::vector<FixedPoint> out;
  for (const auto& pt : unique_pts) {
    FixedPoint fp = assemble_fixed_point(p, pt, support, cfg);
    if (fp.residual > residual_gate(pt)) continue;
    bool consistent = true;
    const Vec3 am = p.competition * fp.moment;
    for (int s : support)
      if (std::abs(am[s] - d.net_growth[s]) > 1e-7 * r_scale)
        consistent = false;
    if (consistent) out.push_back(fp);
  }
  return out;
}

}  // namespace

Vec3 poincare_map(const SeasonalParams& params, const Vec3& x,
                  const IntegratorConfig& cfg) {
  return lv_flow(params, linear_phase_map(params, x, params.bad_duration()),
                 params.good_duration(), cfg);
}

Mat3 poincare_jacobian(const SeasonalParams& params, const Vec3& x,
                       const IntegratorConfig& cfg) {
  const Vec3 lx = linear_phase_map(params, x, params.bad_duration());
  const auto vs = variational_flow(params, lx, params.good_duration(), cfg);
  const Vec3 c = survival_vec(params);
  Mat3 jac = vs.sensitivity;
  for (int j = 0; j < 3; ++j) jac.col(j) *= c[j];
  return jac;
}

Vec3 moment_vector(const SeasonalParams& params, const Vec3& x,
                   const IntegratorConfig& cfg) {
  const Vec3 lx = linear_phase_map(params, x, params.bad_duration());
  return detail::good_season_full(params, lx, params.good_duration(), cfg,
                                  false)
      .integral;
}

double transversal_log_multiplier(const SeasonalParams& params,
                                  const FixedPoint& fp, int i) {
  const auto d = derive(params);
  return d.net_growth[i] - (params.competition * fp.moment)[i];
}

double axial_point_closed_form(const SeasonalParams& params, int axis) {
  const double b = params.growth_rate[axis];
  const double a = params.competition(axis, axis);
  const double c = std::exp(-params.death_rate[axis] * params.bad_duration());
  const double e = std::exp(-b * params.good_duration());
  return b * (c - e) / (a * c * (1.0 - e));
}

double axial_point_newton(const SeasonalParams& params, int axis,
                          const IntegratorConfig& cfg) {
  Vec3 theta = Vec3::Zero();
  theta[axis] = params.growth_rate[axis] / params.competition(axis, axis);
  const double box = search_box_limit(params);
  if (!newton_face<1>(params, {axis}, theta, cfg, box))
    throw NewtonDivergence("axial Newton failed on axis " +
                           std::to_string(axis + 1));
  return theta[axis];
}

FixedPoint assemble_fixed_point(const SeasonalParams& params,
                                const Vec3& point,
                                const std::vector<int>& support,
                                const IntegratorConfig& cfg) {
  IntegratorConfig tight = cfg;
  tight.rel_tol = std::min(cfg.rel_tol, 1e-12);
  tight.abs_tol = std::min(cfg.abs_tol, 1e-14);

  const Vec3 lx = linear_phase_map(params, point, params.bad_duration());
  const auto run = detail::good_season_full(params, lx,
                                            params.good_duration(), tight,
                                            true);
  const Vec3 c = survival_vec(params);
  const auto d = derive(params);

  FixedPoint fp;
  fp.support = support;
  fp.point = point;
  fp.moment = run.integral;
  fp.residual = (run.x - point).lpNorm<Eigen::Infinity>();

  std::array<bool, 3> on{};
  for (int s : support) on[s] = true;
  const Vec3 am = params.competition * fp.moment;
  for (int i = 0; i < 3; ++i)
    fp.transversal_log[i] = on[i] ? 0.0 : d.net_growth[i] - am[i];

  Mat3 jac = run.sensitivity;
  for (int j = 0; j < 3; ++j) jac.col(j) *= c[j];

  // Along a face, rows of absent species have zero off-diagonal entries, so
  // the spectrum splits exactly: the support block's eigenvalues plus the
  // transversal diagonal entries. A dense eigensolve would drown multipliers
  // that sit many orders below the matrix norm.
  std::vector<std::complex<double>> spec;
  const int k = static_cast<int>(support.size());
  if (k > 0) {
    Eigen::MatrixXd block(k, k);
    for (int s = 0; s < k; ++s)
      for (int l = 0; l < k; ++l) block(s, l) = jac(support[s], support[l]);
    if (k == 1) {
      spec.emplace_back(block(0, 0), 0.0);
    } else {
      Eigen::EigenSolver<Eigen::MatrixXd> eig(block);
      for (int s = 0; s < k; ++s) spec.push_back(eig.eigenvalues()[s]);
    }
  }
  for (int i = 0; i < 3; ++i)
    if (!on[i]) spec.emplace_back(jac(i, i), 0.0);
  std::sort(spec.begin(), spec.end(), [](const auto& u, const auto& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  for (int i = 0; i < 3; ++i) fp.multipliers[i] = spec[i];
  return fp;
}

std::optional<FixedPoint> axial_fixed_point(const SeasonalParams& params,
                                            int axis,
                                            const IntegratorConfig& cfg) {
  const auto d = derive(params);
  if (!(d.net_growth[axis] > 0.0)) return std::nullopt;

  const double q_formula = axial_point_closed_form(params, axis);
  const double q_newton = axial_point_newton(params, axis, cfg);
  if (std::abs(q_newton - q_formula) > 1e-8 * std::max(1.0, q_formula))
    throw NewtonDivergence("axial closed form and Newton disagree on axis " +
                           std::to_string(axis + 1));

  Vec3 point = Vec3::Zero();
  point[axis] = q_formula;
  FixedPoint fp = assemble_fixed_point(params, point, {axis}, cfg);
  if (fp.residual > residual_gate(point))
    throw NewtonDivergence("axial fixed point failed its residual gate");
  return fp;
}

std::vector<FixedPoint> planar_fixed_points(const SeasonalParams& params,
                                            int absent,
                                            const IntegratorConfig& cfg,
                                            std::uint64_t seed) {
  const auto d = derive(params);
  const int i = absent == 0 ? 1 : 0;
  const int j = absent == 2 ? 1 : 2;
  if (!(d.net_growth[i] > 0.0) || !(d.net_growth[j] > 0.0)) return {};

  // The moment of any fixed point on this face solves the 2x2 linear system
  // and is strictly positive, so an infeasible candidate moment rules the
  // face out exactly. A singular pair block admits solutions only when the
  // scaled invasion log vanishes (proportional rows).
  const auto& bi = d.pair_moment[i][j];
  const auto& bj = d.pair_moment[j][i];
  if (bi && bj) {
    if (!(*bi > 0.0) || !(*bj > 0.0)) return {};
  } else {
    const double scale = std::abs(params.competition(i, i) *
                                  d.net_growth[j]) +
                         std::abs(params.competition(j, i) *
                                  d.net_growth[i]);
    if (std::abs(d.invasion_log_scaled(i, j)) > 1e-12 * std::max(1.0, scale))
      return {};
  }

  const double box = search_box_limit(params);
  std::vector<Vec3> candidates;

  if (bi && bj) {
    // Warp the moment solution by the axial moment-to-point ratio to land
    // near the fixed point itself.
    Vec3 s = Vec3::Zero();
    s[i] = *bi * axial_point_closed_form(params, i) / d.axial_moment[i];
    s[j] = *bj * axial_point_closed_form(params, j) / d.axial_moment[j];
    try_seed(params, {i, j}, s, cfg, box, candidates);
  }

  static constexpr double kGrid[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (double fi : kGrid)
    for (double fj : kGrid) {
      Vec3 s = Vec3::Zero();
      s[i] = fi * box;
      s[j] = fj * box;
      try_seed(params, {i, j}, s, cfg, box, candidates);
    }
  for (std::uint64_t n = 0; n < 16; ++n) {
    auto frac = [](double v) { return v - std::floor(v); };
    Vec3 s = Vec3::Zero();
    s[i] = (0.02 + 0.96 * frac(radical_inverse(2, n + 1) +
                               seed_shift(seed, 0))) * box;
    s[j] = (0.02 + 0.96 * frac(radical_inverse(3, n + 1) +
                               seed_shift(seed, 1))) * box;
    try_seed(params, {i, j}, s, cfg, box, candidates);
  }

  return gate_and_assemble(params, d, {i, j}, candidates, cfg);
}

std::vector<FixedPoint> interior_fixed_points(const SeasonalParams& params,
                                              const IntegratorConfig& cfg,
                                              std::uint64_t seed) {
  const auto d = derive(params);
  for (int i = 0; i < 3; ++i)
    if (!(d.net_growth[i] > 0.0)) return {};

  const double box = search_box_limit(params);
  std::vector<Vec3> candidates;

  Eigen::FullPivLU<Mat3> lu(params.competition);
  if (lu.isInvertible()) {
    const Vec3 m = lu.solve(d.net_growth);
    // The moment of an interior fixed point is the unique solution of the
    // full linear system and is strictly positive; a sign failure rules the
    // interior out exactly.
    if (!(m.array() > 0.0).all()) return {};
    Vec3 s;
    for (int l = 0; l < 3; ++l)
      s[l] = m[l] * axial_point_closed_form(params, l) / d.axial_moment[l];
    try_seed(params, {0, 1, 2}, s, cfg, box, candidates);
  }

  static constexpr int kBases[3] = {2, 3, 5};
  for (std::uint64_t n = 0; n < 32; ++n) {
    auto frac = [](double v) { return v - std::floor(v); };
    Vec3 s;
    for (int l = 0; l < 3; ++l)
      s[l] = (0.02 + 0.96 * frac(radical_inverse(kBases[l], n + 1) +
                                 seed_shift(seed, l))) * box;
    try_seed(params, {0, 1, 2}, s, cfg, box, candidates);
  }

  return gate_and_assemble(params, d, {0, 1, 2}, candidates, cfg);
}

double search_box_limit(const SeasonalParams& params) {
  const auto d = derive(params);
  double q_max = 0.0;
  for (int i = 0; i < 3; ++i)
    if (d.net_growth[i] > 0.0)
      q_max = std::max(q_max, axial_point_closed_form(params, i));
  if (q_max == 0.0)
    for (int i = 0; i < 3; ++i)
      q_max = std::max(q_max,
                       params.growth_rate[i] / params.competition(i, i));
  return 1.05 * q_max;
}

}  // namespace lvseasons
