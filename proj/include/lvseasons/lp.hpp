#pragma once

#include <vector>

#include "lvseasons/common.hpp"

namespace lvseasons {

struct WeightCertificate {
  double margin = 0.0;  // max over weights of min over rows of weights . row
  Vec3 weights = Vec3::Zero();
};

// Solves  max_t { t : nu . row >= t for all rows, nu_i >= weight_floor,
// sum nu = 1 }  by exact enumeration of basic feasible points in the
// 3-variable reduction (nu3 eliminated). Deterministic. Throws DegenerateLP
// when rows is empty or no feasible vertex exists.
WeightCertificate max_min_weight_margin(const std::vector<Vec3>& rows,
                                        double weight_floor = 1e-9);

}  // namespace lvseasons
