#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace lvseasons {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Adaptive step control collapsed below the resolvable step size.
struct StepSizeUnderflow : std::runtime_error {
  double t_reached;
  explicit StepSizeUnderflow(double t)
      : std::runtime_error("step size underflow at t=" + std::to_string(t)),
        t_reached(t) {}
};

// A Newton solve that is expected to succeed did not; signals a
// misconfigured integrator rather than a property of the model.
struct NewtonDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateLP : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lvseasons
