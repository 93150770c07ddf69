#include "ffplan/estimation.hpp"

namespace ffplan {

namespace {

void symmetrize(Mat10& p) { p = 0.5 * (p + p.transpose()).eval(); }

}  // namespace

EkfBelief make_belief(const FreeflyerState& x0, const InertialParams& theta0,
                      const Vec4& sigma_theta0, const Vec6& sigma_state0) {
  EkfBelief b;
  b.mean.head<6>() = x0.as_vector();
  b.mean.tail<4>() = theta0.as_vector();
  b.cov.setZero();
  b.cov.topLeftCorner<6, 6>() = sigma_state0.asDiagonal();
  b.cov.bottomRightCorner<4, 4>() = sigma_theta0.asDiagonal();
  return b;
}

EkfBelief ekf_predict(const EkfBelief& belief, const BodyWrench& u, double dt,
                      const NoiseModel& noise, bool coriolis) {
  const InertialParams th = belief.params();
  const FreeflyerState x = belief.state();
  const Jacobians j = jacobians(th, x, u, coriolis);

  Mat10 phi = Mat10::Identity();
  phi.topLeftCorner<6, 6>() += dt * j.a;
  phi.topRightCorner<6, 4>() = dt * j.g;

  EkfBelief out;
  out.mean.head<6>() = step(th, x, u, dt, coriolis).as_vector();
  out.mean.tail<4>() = belief.mean.tail<4>();
  out.cov = phi * belief.cov * phi.transpose();
  out.cov.topLeftCorner<6, 6>() += Mat6((noise.sigma_q * dt).asDiagonal());
  symmetrize(out.cov);
  return out;
}

EkfBelief ekf_update(const EkfBelief& belief, const Vec6& y,
                     const NoiseModel& noise, const ParamBounds& bounds) {
  const Mat6 s = belief.cov.topLeftCorner<6, 6>() + Mat6(noise.sigma_r.asDiagonal());
  const Eigen::FullPivLU<Mat6> lu(s);
  if (!lu.isInvertible()) {
    throw SingularInnovation{};
  }

  // H = [I6 0]: P H^T is the left 10x6 block of P.
  const Eigen::Matrix<double, 10, 6> k = belief.cov.leftCols<6>() * lu.inverse();

  Vec6 innovation = y - belief.mean.head<6>();
  innovation[2] = angle_diff(y[2], belief.mean[2]);

  EkfBelief out;
  out.mean = belief.mean + k * innovation;
  out.mean[2] = wrap_angle(out.mean[2]);
  out.mean[6] = std::clamp(out.mean[6], bounds.m_min, bounds.m_max);
  out.mean[7] = std::clamp(out.mean[7], -bounds.c_max, bounds.c_max);
  out.mean[8] = std::clamp(out.mean[8], -bounds.c_max, bounds.c_max);
  out.mean[9] = std::clamp(out.mean[9], bounds.izz_min, bounds.izz_max);

  Mat10 ikh = Mat10::Identity();
  ikh.leftCols<6>() -= k;
  out.cov = ikh * belief.cov * ikh.transpose() +
            k * Mat6(noise.sigma_r.asDiagonal()) * k.transpose();
  symmetrize(out.cov);
  return out;
}

ParamEstimate param_estimate(const EkfBelief& belief) {
  Mat4 p = belief.cov.bottomRightCorner<4, 4>();
  p = 0.5 * (p + p.transpose()).eval();
  return {belief.params(), p};
}

bool params_at_bounds(const EkfBelief& belief, const ParamBounds& bounds) {
  const double m = belief.mean[6], cx = belief.mean[7], cy = belief.mean[8],
               izz = belief.mean[9];
  return m <= bounds.m_min || m >= bounds.m_max ||
         std::abs(cx) >= bounds.c_max || std::abs(cy) >= bounds.c_max ||
         izz <= bounds.izz_min || izz >= bounds.izz_max;
}

}  // namespace ffplan
