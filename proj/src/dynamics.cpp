#include "ffplan/dynamics.hpp"

namespace ffplan {

namespace {

// Right-hand side b of M a = b: applied wrench plus the centripetal terms of
// the offset CM (and, optionally, the body-frame velocity coupling).
Vec3 forcing(const InertialParams& th, const FreeflyerState& x,
             const BodyWrench& u, bool coriolis) {
  const double w2 = x.omega * x.omega;
  Vec3 b{u.fx + th.m * w2 * th.cx, u.fy + th.m * w2 * th.cy, u.tau};
  if (coriolis) {
    b[0] += th.m * x.omega * x.vy;
    b[1] -= th.m * x.omega * x.vx;
  }
  return b;
}

}  // namespace

Mat3 mass_matrix(const InertialParams& th) {
  const double mcx = th.m * th.cx;
  const double mcy = th.m * th.cy;
  Mat3 m;
  m << th.m, 0.0, -mcy,
       0.0, th.m, mcx,
       -mcy, mcx, th.izz + th.m * (th.cx * th.cx + th.cy * th.cy);
  return m;
}

Vec3 acceleration(const InertialParams& th, const FreeflyerState& x,
                  const BodyWrench& u, bool coriolis) {
  // M is positive definite (det = m^2 izz > 0), so LDLT always succeeds.
  return mass_matrix(th).ldlt().solve(forcing(th, x, u, coriolis));
}

Vec6 state_derivative(const InertialParams& th, const FreeflyerState& x,
                      const BodyWrench& u, bool coriolis) {
  const double c = std::cos(x.phi), s = std::sin(x.phi);
  const Vec3 a = acceleration(th, x, u, coriolis);
  Vec6 dx;
  dx << c * x.vx - s * x.vy,
        s * x.vx + c * x.vy,
        x.omega,
        a[0], a[1], a[2];
  return dx;
}

FreeflyerState step(const InertialParams& th, const FreeflyerState& x,
                    const BodyWrench& u, double dt, bool coriolis) {
  const Vec6 x0 = x.as_vector();
  auto f = [&](const Vec6& z) {
    return state_derivative(th, FreeflyerState::from_vector(z), u, coriolis);
  };
  const Vec6 k1 = f(x0);
  const Vec6 k2 = f(x0 + 0.5 * dt * k1);
  const Vec6 k3 = f(x0 + 0.5 * dt * k2);
  const Vec6 k4 = f(x0 + dt * k3);
  FreeflyerState out =
      FreeflyerState::from_vector(x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  out.phi = wrap_angle(out.phi);
  return out;
}

Jacobians jacobians(const InertialParams& th, const FreeflyerState& x,
                    const BodyWrench& u, bool coriolis) {
  Jacobians j;
  j.a.setZero();
  j.b.setZero();
  j.g.setZero();

  const double c = std::cos(x.phi), s = std::sin(x.phi);
  j.a(0, 2) = -s * x.vx - c * x.vy;
  j.a(0, 3) = c;
  j.a(0, 4) = -s;
  j.a(1, 2) = c * x.vx - s * x.vy;
  j.a(1, 3) = s;
  j.a(1, 4) = c;
  j.a(2, 5) = 1.0;

  const auto ldlt = mass_matrix(th).ldlt();
  const Vec3 acc = ldlt.solve(forcing(th, x, u, coriolis));

  // d a / d omega (and d a / d v under the coriolis flag).
  Vec3 db_dw{2.0 * th.m * x.omega * th.cx, 2.0 * th.m * x.omega * th.cy, 0.0};
  if (coriolis) {
    db_dw[0] += th.m * x.vy;
    db_dw[1] -= th.m * x.vx;
    j.a.block<3, 1>(3, 3) = ldlt.solve(Vec3{0.0, -th.m * x.omega, 0.0});
    j.a.block<3, 1>(3, 4) = ldlt.solve(Vec3{th.m * x.omega, 0.0, 0.0});
  }
  j.a.block<3, 1>(3, 5) = ldlt.solve(db_dw);

  // Inputs enter linearly through M^{-1}; kinematics rows stay zero.
  j.b.block<3, 3>(3, 0) = ldlt.solve(Mat3::Identity());

  // d a / d theta_i = M^{-1} (d b / d theta_i - (d M / d theta_i) a).
  const double w2 = x.omega * x.omega;
  Mat3 dm;
  Vec3 db;

  // m
  dm << 1.0, 0.0, -th.cy,
        0.0, 1.0, th.cx,
        -th.cy, th.cx, th.cx * th.cx + th.cy * th.cy;
  db = {w2 * th.cx, w2 * th.cy, 0.0};
  if (coriolis) {
    db[0] += x.omega * x.vy;
    db[1] -= x.omega * x.vx;
  }
  j.g.block<3, 1>(3, 0) = ldlt.solve(db - dm * acc);

  // cx
  dm << 0.0, 0.0, 0.0,
        0.0, 0.0, th.m,
        0.0, th.m, 2.0 * th.m * th.cx;
  db = {th.m * w2, 0.0, 0.0};
  j.g.block<3, 1>(3, 1) = ldlt.solve(db - dm * acc);

  // cy
  dm << 0.0, 0.0, -th.m,
        0.0, 0.0, 0.0,
        -th.m, 0.0, 2.0 * th.m * th.cy;
  db = {0.0, th.m * w2, 0.0};
  j.g.block<3, 1>(3, 2) = ldlt.solve(db - dm * acc);

  // izz
  dm.setZero();
  dm(2, 2) = 1.0;
  j.g.block<3, 1>(3, 3) = ldlt.solve(Vec3(-dm * acc));

  return j;
}

}  // namespace ffplan
