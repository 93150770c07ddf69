#pragma once

#include "ffplan/local_plan.hpp"

namespace ffplan {

/// Default MPC weights: the planner's state weights with a much smaller
/// input penalty. The planner's R = 100 I is sized for 12 s horizons and
/// leaves a 1 s tracking loop far too slow; R = 0.1 I regulates a 0.2 m
/// offset to below 0.01 m within 30 s.
inline CostWeights mpc_default_weights() {
  CostWeights w = CostWeights::defaults();
  w.r = 0.1 * Mat3::Identity();
  return w;
}

/// Tracking MPC configuration: the local objective with gamma pinned to 0
/// over a shorter horizon.
struct MpcConfig {
  int horizon_nc = 10;
  double dt_c = 0.1;
  CostWeights weights = mpc_default_weights();  ///< gamma is ignored (0)
  double u_max = 0.4;
  bool coriolis = false;
};

struct MpcResult {
  BodyWrench u0;                       ///< first input, clipped to the box
  std::vector<FreeflyerState> predicted;
  std::vector<BodyWrench> solution;    ///< full solve, feeds the next warm start
  bool converged = true;
};

/// Reference state at `t` seconds past the local plan start: linear
/// interpolation between knots (shortest arc on heading), clamped to the
/// final state beyond the plan end.
FreeflyerState interpolate_plan(const LocalPlan& plan, double t);

/// One MPC step: extracts the reference segment from the local plan at
/// `elapsed_in_plan`, solves the gamma = 0 tracking problem warm-started
/// from the previous solution shifted by one knot, and returns the first
/// input. Pass warm = nullptr after a model swap.
MpcResult mpc_step(const FreeflyerState& x_now, const InertialParams& theta_hat,
                   const LocalPlan& local_plan, double elapsed_in_plan,
                   const MpcConfig& config,
                   const std::vector<BodyWrench>* warm = nullptr);

}  // namespace ffplan
