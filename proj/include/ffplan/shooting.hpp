#pragma once

#include <vector>

#include "ffplan/information.hpp"
#include "ffplan/world.hpp"

namespace ffplan {

/// Direct single-shooting problem over inputs u_0..u_{N-1}:
///   J = sum_k (x_k - ref_k)' Q (x_k - ref_k) + u_k' R u_k
///       + (x_N - ref_N)' Qf (x_N - ref_N)
///       + gamma tr((F + eps I)^{-1}) + obstacle hinge penalty,
/// subject to x_{k+1} = step(theta, x_k, u_k, dt) and |u| <= u_max (box).
/// `reference` holds N+1 per-knot targets; heading errors use the shortest
/// arc. The tracking/penalty gradient is analytic (adjoint through the RK4
/// rollout); the information term is differenced over inputs.
struct ShootingProblem {
  InertialParams theta;
  FreeflyerState x0;
  std::vector<FreeflyerState> reference;
  Mat6 q = Mat6::Identity();
  Mat3 r = Mat3::Identity();
  Mat6 q_f = Mat6::Identity();
  double gamma = 0.0;
  double eps = 1e-6;
  NoiseModel noise = NoiseModel::defaults();
  const ObstacleWorld* world = nullptr;  ///< adds the hinge penalty when set
  double w_obs = 1e3;
  double u_max = 0.4;
  double dt = 0.5;
  int max_iters = 200;
  double grad_tol = 1e-4;   ///< projected-gradient norm
  double cost_tol = 1e-8;   ///< accepted-step cost decrease
  double fd_step_rel = 1e-4;  ///< info-term difference step, relative to u_max
  bool coriolis = false;
};

struct ShootingSolution {
  std::vector<FreeflyerState> states;  ///< x_0..x_N at the solution
  std::vector<BodyWrench> inputs;      ///< u_0..u_{N-1}
  double cost = 0.0;                   ///< total objective
  double tracking_cost = 0.0;          ///< state + input + terminal terms
  double info_value = 0.0;             ///< tr((F + eps I)^{-1}), unweighted
  double penalty_cost = 0.0;
  bool converged = false;
  int iters = 0;
};

/// Cost pieces of a fixed input sequence (no optimization). `info_value` is
/// always evaluated, even at gamma = 0.
ShootingSolution evaluate_shooting(const ShootingProblem& problem,
                                   const std::vector<BodyWrench>& inputs);

/// Monotone projected spectral-gradient descent with backtracking from
/// `init` (resized/padded to N inputs, clamped to the box). Never returns a
/// cost above the initial guess.
ShootingSolution solve_shooting(const ShootingProblem& problem,
                                std::vector<BodyWrench> init);

}  // namespace ffplan
