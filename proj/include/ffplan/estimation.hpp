#pragma once

#include <stdexcept>

#include "ffplan/information.hpp"

namespace ffplan {

/// Innovation covariance not invertible (corrupt Sigma_R configuration).
struct SingularInnovation : std::runtime_error {
  SingularInnovation() : std::runtime_error("singular innovation covariance") {}
};

/// Clamp bounds applied to the parameter block after every update; keep the
/// planner and controller models physically valid during transients.
struct ParamBounds {
  double m_min = 0.1;
  double m_max = 1000.0;
  double c_max = 1.0;
  double izz_min = 1e-3;
  double izz_max = 100.0;
};

/// Joint state-parameter belief: mean = (FreeflyerState, InertialParams),
/// cov 10x10 symmetric PSD. Values are plain data; predict/update produce
/// new beliefs.
struct EkfBelief {
  Vec10 mean = Vec10::Zero();
  Mat10 cov = Mat10::Identity();

  FreeflyerState state() const { return FreeflyerState::from_vector(mean.head<6>()); }
  InertialParams params() const { return InertialParams::from_vector(mean.tail<4>()); }
};

/// Initial belief from a known start state and a parameter prior.
EkfBelief make_belief(const FreeflyerState& x0, const InertialParams& theta0,
                      const Vec4& sigma_theta0, const Vec6& sigma_state0);

/// Propagates the mean with the belief's own theta (held constant, no
/// parameter process noise) and the covariance with the discretized
/// augmented Jacobian Phi = I + dt [[A, G], [0, 0]].
EkfBelief ekf_predict(const EkfBelief& belief, const BodyWrench& u, double dt,
                      const NoiseModel& noise, bool coriolis = false);

/// Full-state measurement update (H = [I6 0]), Joseph-form covariance,
/// heading innovation wrapped, parameter block clamped to `bounds`.
EkfBelief ekf_update(const EkfBelief& belief, const Vec6& y,
                     const NoiseModel& noise, const ParamBounds& bounds = {});

struct ParamEstimate {
  InertialParams theta;
  Mat4 cov;  ///< marginal covariance of theta
};

/// Extracts the parameter block of the belief and its marginal covariance.
ParamEstimate param_estimate(const EkfBelief& belief);

/// True iff any parameter component sits at a clamp bound (clamping leaves
/// the value exactly on the bound, so this detects an active clamp).
bool params_at_bounds(const EkfBelief& belief, const ParamBounds& bounds = {});

}  // namespace ffplan
