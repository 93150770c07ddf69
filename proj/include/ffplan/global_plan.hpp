#pragma once

#include <random>

#include "ffplan/types.hpp"
#include "ffplan/world.hpp"

namespace ffplan {

struct WorldFull : std::runtime_error {
  WorldFull() : std::runtime_error("free-space sampling failed: world full") {}
};
struct NoPlanFound : std::runtime_error {
  NoPlanFound() : std::runtime_error("global planner budget exhausted") {}
};
struct StartInCollision : std::runtime_error {
  StartInCollision() : std::runtime_error("global planner start in collision") {}
};

/// Goal set: position ball around `center` with a velocity-magnitude cap.
struct GoalRegion {
  Vec2 center = Vec2::Zero();
  double tol_pos = 0.15;  ///< [m]
  double tol_vel = 0.05;  ///< [m/s]
};

/// Translational tree node: double-integrator state reached from `parent` by
/// applying the constant primitive force `action` for `duration`.
struct TransNode {
  Vec2 p = Vec2::Zero();       ///< world position [m]
  Vec2 v = Vec2::Zero();       ///< world velocity [m/s]
  int parent = -1;             ///< index into the tree, -1 for the root
  Vec2 action = Vec2::Zero();  ///< primitive force (fx, fy) [N]
  double duration = 0.0;       ///< [s]
};

/// Waypoint path from start to goal; node k is reached at the cumulative sum
/// of durations up to k.
struct GlobalPlan {
  std::vector<TransNode> nodes;
  double total_time = 0.0;
};

struct RrtParams {
  double v_max = 0.2;           ///< sampled velocity bound [m/s]
  double goal_bias = 0.1;       ///< probability of sampling the goal center
  double dt_prim = 2.0;         ///< primitive duration [s]
  double u_max = 0.4;           ///< primitive force magnitude per axis [N]
  double vel_weight = 0.5;      ///< velocity weight in the distance metric
  double collision_res = 0.02;  ///< sweep sampling resolution [m]
  int max_iters = 20000;        ///< deterministic iteration budget
  double max_seconds = 1e18;    ///< wall-clock safety cap
};

/// Uniform sample of a free (position, velocity) pair; with probability
/// `goal_bias` returns (goal center, 0) if the goal center is free.
/// Throws WorldFull after 1e4 rejections.
std::pair<Vec2, Vec2> sample_free(const ObstacleWorld& world, std::mt19937_64& rng,
                                  const RrtParams& params, const GoalRegion& goal);

/// Evaluates the 9-primitive set {-u_max, 0, +u_max}^2 over dt_prim with
/// double-integrator dynamics at the nominal mass; returns the outcome
/// closest to `toward` under ||dp|| + vel_weight ||dv||. Parent index unset.
TransNode steer(const TransNode& from, const Vec2& p_toward, const Vec2& v_toward,
                const InertialParams& theta_nominal, const RrtParams& params);

/// True iff the swept double-integrator trajectory, sampled at arc-length
/// resolution `params.collision_res`, stays in bounds and clear of all
/// inflated obstacles.
bool collision_check(const ObstacleWorld& world, const Vec2& p, const Vec2& v,
                     const Vec2& action, const InertialParams& theta_nominal,
                     double duration, double resolution);

/// Kinodynamic RRT over translational states. Deterministic for a fixed
/// (seed, world, budget). Throws StartInCollision / NoPlanFound.
GlobalPlan plan_global(const Vec2& p0, const Vec2& v0, const GoalRegion& goal,
                       const ObstacleWorld& world, const InertialParams& theta_nominal,
                       const RrtParams& params, std::uint64_t seed);

}  // namespace ffplan
