#include "lvseasons/presets.hpp"

#include <stdexcept>

namespace lvseasons {

namespace {

SeasonalParams make_params(double omega, double phi, Vec3 mu, Vec3 b,
                           Mat3 a) {
  SeasonalParams p;
  p.period = omega;
  p.good_fraction = phi;
  p.death_rate = mu;
  p.growth_rate = b;
  p.competition = a;
  return p;
}

const BuiltinSystem kExamples[3] = {
    {"ring",
     make_params(10.0, 0.65, {0.15, 0.2, 0.1}, {0.3, 0.3, 0.25},
                 (Mat3() << 0.2, 0.35, 0.2,
                            0.1, 0.2, 0.3,
                            0.8, 0.1, 0.3).finished()),
     {0.3, 0.4, 0.8},
     2000, 600.0, 1201},
    {"planar",
     make_params(10.0, 0.5, {0.1, 0.11, 0.15}, {0.345, 0.505, 0.666},
                 (Mat3() << 0.73, 0.215, 0.052,
                            1.092, 0.892, 0.003,
                            0.185, 2.923, 0.009).finished()),
     {2.0, 5.0, 2.0},
     2000, 600.0, 1201},
    {"stiff",
     make_params(1.0, 0.97, {0.23, 0.27, 0.18}, {108.0, 1.2, 2.3174},
                 (Mat3() << 6.99, 1.0, 100.2,
                            0.074, 0.521, 0.602,
                            0.1174, 1.0, 1.2).finished()),
     {1.8, 2.3, 1.5},
     2000, 60.0, 1201},
};

}  // namespace

const BuiltinSystem& builtin_example(int index) {
  if (index < 1 || index > 3)
    throw std::out_of_range("builtin example index must be 1, 2 or 3");
  return kExamples[index - 1];
}

SeasonalParams dominance_params() {
  return make_params(10.0, 0.65, {0.1, 0.1, 0.1}, {0.5, 0.2, 0.2},
                     (Mat3() << 0.1, 0.1, 0.1,
                                1.0, 1.0, 0.1,
                                1.0, 0.1, 1.0).finished());
}

}  // namespace lvseasons
