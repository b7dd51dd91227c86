#include "lvseasons/lp.hpp"

#include <array>
#include <cmath>

namespace lvseasons {

namespace {

struct HalfSpace {
  Eigen::Vector3d normal;  // unknowns (nu1, nu2, t); nu3 = 1 - nu1 - nu2
  double rhs;              // normal . u >= rhs
};

}  // namespace

WeightCertificate max_min_weight_margin(const std::vector<Vec3>& rows,
                                        double weight_floor) {
  if (rows.empty()) throw DegenerateLP("no constraint rows");
  if (!(weight_floor > 0.0) || !(weight_floor < 1.0 / 3.0))
    throw std::invalid_argument("weight_floor must lie in (0, 1/3)");

  std::vector<HalfSpace> hs;
  for (const auto& m : rows)
    hs.push_back({{m[0] - m[2], m[1] - m[2], -1.0}, -m[2]});
  hs.push_back({{1.0, 0.0, 0.0}, weight_floor});
  hs.push_back({{0.0, 1.0, 0.0}, weight_floor});
  hs.push_back({{-1.0, -1.0, 0.0}, weight_floor - 1.0});

  const int n = static_cast<int>(hs.size());
  bool found = false;
  Eigen::Vector3d best = Eigen::Vector3d::Zero();

  // The objective is max t; with at most a dozen half-spaces, exact
  // enumeration of all basic points is cheaper and sturdier than simplex.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        Eigen::Matrix3d m;
        m.row(0) = hs[a].normal;
        m.row(1) = hs[b].normal;
        m.row(2) = hs[c].normal;
        Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
        if (!lu.isInvertible()) continue;
        const Eigen::Vector3d u =
            lu.solve(Eigen::Vector3d(hs[a].rhs, hs[b].rhs, hs[c].rhs));
        if (!u.allFinite()) continue;

        bool feasible = true;
        for (const auto& h : hs) {
          const double lhs = h.normal.dot(u);
          const double tol =
              1e-10 * std::max({1.0, std::abs(lhs), std::abs(h.rhs)});
          if (lhs < h.rhs - tol) {
            feasible = false;
            break;
          }
        }
        if (feasible && (!found || u[2] > best[2])) {
          best = u;
          found = true;
        }
      }

  if (!found) throw DegenerateLP("no feasible basic point");
  WeightCertificate cert;
  cert.margin = best[2];
  cert.weights = Vec3(best[0], best[1], 1.0 - best[0] - best[1]);
  return cert;
}

}  // namespace lvseasons
