#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace ffplan {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat10 = Eigen::Matrix<double, 10, 10>;
using Mat63 = Eigen::Matrix<double, 6, 3>;
using Mat64 = Eigen::Matrix<double, 6, 4>;

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::fmod(a + M_PI, 2.0 * M_PI);
  if (w <= 0.0) w += 2.0 * M_PI;
  return w - M_PI;
}

/// Shortest signed angular distance a - b.
inline double angle_diff(double a, double b) { return wrap_angle(a - b); }

/// Uncertain inertial parameters theta = (m, cx, cy, izz).
/// Ordering is fixed: every Jacobian / covariance over theta uses it.
struct InertialParams {
  double m = 1.0;    ///< system mass [kg]
  double cx = 0.0;   ///< CM offset x in body frame [m]
  double cy = 0.0;   ///< CM offset y in body frame [m]
  double izz = 1.0;  ///< moment of inertia about the CM [kg m^2]

  Vec4 as_vector() const { return {m, cx, cy, izz}; }
  static InertialParams from_vector(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

  bool valid(double c_max = 1.0) const {
    return std::isfinite(m) && std::isfinite(cx) && std::isfinite(cy) &&
           std::isfinite(izz) && m > 0.0 && izz > 0.0 &&
           std::abs(cx) <= c_max && std::abs(cy) <= c_max;
  }
};

/// Planar free-flyer state: world position of the body reference point B,
/// heading, body-frame velocity components, and angular rate.
struct FreeflyerState {
  double rx = 0.0;     ///< world position x [m]
  double ry = 0.0;     ///< world position y [m]
  double phi = 0.0;    ///< heading, wrapped to (-pi, pi] [rad]
  double vx = 0.0;     ///< body-frame velocity x [m/s]
  double vy = 0.0;     ///< body-frame velocity y [m/s]
  double omega = 0.0;  ///< angular rate [rad/s]

  Vec6 as_vector() const {
    Vec6 v;
    v << rx, ry, phi, vx, vy, omega;
    return v;
  }
  static FreeflyerState from_vector(const Vec6& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }

  Vec2 position() const { return {rx, ry}; }

  /// Body velocity rotated into the world frame.
  Vec2 velocity_world() const {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * vx - s * vy, s * vx + c * vy};
  }
};

/// Body-frame force and torque applied at the body reference point.
struct BodyWrench {
  double fx = 0.0;   ///< body-frame force x [N]
  double fy = 0.0;   ///< body-frame force y [N]
  double tau = 0.0;  ///< torque about the body axis [N m]

  Vec3 as_vector() const { return {fx, fy, tau}; }
  static BodyWrench from_vector(const Vec3& v) { return {v[0], v[1], v[2]}; }

  BodyWrench clamped(double u_max) const {
    auto clip = [u_max](double x) { return std::clamp(x, -u_max, u_max); };
    return {clip(fx), clip(fy), clip(tau)};
  }
};

}  // namespace ffplan
