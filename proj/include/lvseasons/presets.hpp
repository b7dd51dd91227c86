#pragma once

#include "lvseasons/params.hpp"

namespace lvseasons {

struct BuiltinSystem {
  const char* name;
  SeasonalParams params;
  Vec3 orbit_start;     // initial point used by the bundled demos
  int orbit_length;     // period-map iterates for the orbit demo
  double horizon;       // time-series horizon
  int samples;          // time-series sample count
};

// Three bundled parameter sets, indexed 1..3. All three are permanent:
//   1: symmetric-leaning set whose boundary carries a heteroclinic ring;
//      interior point is a weakly attracting focus (multiplier modulus
//      0.99985), so orbits spiral in over ~1e5 periods
//   2: asymmetric set with a single planar coexistence point and an
//      attracting invariant closed curve
//   3: stiff set with fast species-1 dynamics and strong cross-competition,
//      also carrying an attracting invariant closed curve
const BuiltinSystem& builtin_example(int index);

// Strongly dominant species 1: every competitor collapses. Impermanent;
// used by tests as the negative control.
SeasonalParams dominance_params();

}  // namespace lvseasons
