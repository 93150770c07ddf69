#include "ffplan/information.hpp"

#include <stdexcept>

namespace ffplan {

SensitivityMatrix propagate_sensitivity(const InertialParams& theta,
                                        const FreeflyerState& state,
                                        const BodyWrench& u,
                                        const SensitivityMatrix& s, double dt,
                                        bool coriolis) {
  const Jacobians j = jacobians(theta, state, u, coriolis);
  return s + dt * (j.a * s + j.g);
}

FimMatrix accumulate(const FimMatrix& f, const Mat64& h_mat,
                     const NoiseModel& noise) {
  return f + h_mat.transpose() * noise.sigma_r.cwiseInverse().asDiagonal() * h_mat;
}

double a_optimality(const FimMatrix& f, double eps) {
  const Mat4 reg = f + eps * Mat4::Identity();
  return reg.ldlt().solve(Mat4::Identity()).trace();
}

FimMatrix fim_along_trajectory(const InertialParams& theta,
                               const FreeflyerState& x0,
                               std::span<const BodyWrench> inputs, double dt,
                               const NoiseModel& noise, bool coriolis) {
  if (inputs.empty()) {
    throw std::invalid_argument("fim_along_trajectory: empty input sequence");
  }
  FimMatrix f = FimMatrix::Zero();
  SensitivityMatrix s = SensitivityMatrix::Zero();
  FreeflyerState x = x0;
  for (const BodyWrench& u : inputs) {
    f = accumulate(f, measurement_jacobian(s), noise);
    s = propagate_sensitivity(theta, x, u, s, dt, coriolis);
    x = step(theta, x, u, dt, coriolis);
  }
  return accumulate(f, measurement_jacobian(s), noise);
}

}  // namespace ffplan
