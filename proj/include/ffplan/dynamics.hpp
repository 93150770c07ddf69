#pragma once

#include "ffplan/types.hpp"

namespace ffplan {

/// Continuous-time Jacobians of state_derivative:
/// a = d xdot / d x (6x6), b = d xdot / d u (6x3), g = d xdot / d theta (6x4).
struct Jacobians {
  Mat6 a;
  Mat63 b;
  Mat64 g;
};

/// Mass matrix M of the offset-CM planar rigid body,
///   M = [[m, 0, -m cy], [0, m, m cx], [-m cy, m cx, izz + m (cx^2 + cy^2)]].
/// Symmetric, det(M) = m^2 izz.
Mat3 mass_matrix(const InertialParams& theta);

/// Body-frame accelerations (vdot_x, vdot_y, omegadot) solving
///   M a = [fx + m w^2 cx, fy + m w^2 cy, tau].
/// With `coriolis` the velocity coupling terms m (w vy, -w vx) are added to
/// the force rows; the default follows the offset-CM equations literally.
Vec3 acceleration(const InertialParams& theta, const FreeflyerState& state,
                  const BodyWrench& u, bool coriolis = false);

/// Full state derivative: world-frame kinematics plus body accelerations.
/// Component order matches FreeflyerState::as_vector().
Vec6 state_derivative(const InertialParams& theta, const FreeflyerState& state,
                      const BodyWrench& u, bool coriolis = false);

/// Classical RK4 step with zero-order-hold input; heading re-wrapped.
FreeflyerState step(const InertialParams& theta, const FreeflyerState& state,
                    const BodyWrench& u, double dt, bool coriolis = false);

/// Analytic continuous-time Jacobians at (theta, state, u).
Jacobians jacobians(const InertialParams& theta, const FreeflyerState& state,
                    const BodyWrench& u, bool coriolis = false);

}  // namespace ffplan
