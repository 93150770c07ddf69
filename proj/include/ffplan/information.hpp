#pragma once

#include <span>

#include "ffplan/dynamics.hpp"

namespace ffplan {

/// State sensitivity d x_k / d theta (6x4); zero at trajectory start.
using SensitivityMatrix = Mat64;

/// Fisher information over theta, accumulated as F += H^T Sigma_R^{-1} H.
using FimMatrix = Mat4;

/// Diagonal measurement / process noise covariances (variances, SI units^2),
/// ordered like FreeflyerState.
struct NoiseModel {
  Vec6 sigma_r;  ///< measurement covariance diagonal Sigma_R
  Vec6 sigma_q;  ///< process covariance diagonal Sigma_Q

  static NoiseModel defaults() {
    NoiseModel n;
    n.sigma_r << 0.005 * 0.005, 0.005 * 0.005, 0.01 * 0.01,
                 0.005 * 0.005, 0.005 * 0.005, 0.01 * 0.01;
    n.sigma_q = Vec6::Constant(1e-8);
    return n;
  }

  bool valid() const {
    return (sigma_r.array() > 0.0).all() && (sigma_q.array() > 0.0).all() &&
           sigma_r.allFinite() && sigma_q.allFinite();
  }
};

/// First-order (Euler) sensitivity propagation at the planner knot spacing:
///   s' = (I + dt A) s + dt G.
SensitivityMatrix propagate_sensitivity(const InertialParams& theta,
                                        const FreeflyerState& state,
                                        const BodyWrench& u,
                                        const SensitivityMatrix& s, double dt,
                                        bool coriolis = false);

/// Measurement Jacobian H under the full-state model h(x) = x: H = s.
inline Mat64 measurement_jacobian(const SensitivityMatrix& s) { return s; }

/// One information update: f' = f + H^T Sigma_R^{-1} H.
FimMatrix accumulate(const FimMatrix& f, const Mat64& h_mat,
                     const NoiseModel& noise);

/// A-optimality cost tr((F + eps I)^{-1}); equals 4/eps at zero information.
double a_optimality(const FimMatrix& f, double eps);

/// Integrates the dynamics, propagates the sensitivity and accumulates the
/// FIM at every knot (k = 0..N); returns the final F.
FimMatrix fim_along_trajectory(const InertialParams& theta,
                               const FreeflyerState& x0,
                               std::span<const BodyWrench> inputs, double dt,
                               const NoiseModel& noise, bool coriolis = false);

}  // namespace ffplan
