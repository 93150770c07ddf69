#pragma once

#include "ffplan/global_plan.hpp"
#include "ffplan/shooting.hpp"

namespace ffplan {

struct TargetInCollision : std::runtime_error {
  TargetInCollision() : std::runtime_error("local plan target in collision") {}
};

/// Weights of the local objective. q_f realizes the terminal cost; gamma
/// scales the information term.
struct CostWeights {
  Mat6 q = Mat6::Identity();
  Mat3 r = Mat3::Identity();
  Mat6 q_f = Mat6::Identity();
  double gamma = 0.0;

  static CostWeights defaults() {
    CostWeights w;
    w.q = Vec6{10.0, 10.0, 5.0, 1.0, 1.0, 1.0}.asDiagonal();
    w.r = 100.0 * Mat3::Identity();
    w.q_f = 10.0 * w.q;
    w.gamma = 0.0;
    return w;
  }
};

/// State/input trajectory from the information-aware optimizer. States are
/// consistent with the inputs under the planning model; a non-converged
/// solve still yields a usable (monotone-descent) plan, flagged here.
struct LocalPlan {
  std::vector<FreeflyerState> states;
  std::vector<BodyWrench> inputs;
  double dt = 0.5;
  double achieved_cost = 0.0;
  double info_trace = 0.0;  ///< tr((F + eps I)^{-1}) at the solution
  bool converged = true;

  double span() const { return dt * static_cast<double>(inputs.size()); }
};

struct WaypointSelection {
  FreeflyerState target;
  int horizon = 2;
};

/// Picks the first global node at least one replan period ahead of
/// `elapsed_time` (final node when the plan is exhausted) and sizes the
/// local horizon to reach it at the knot spacing. Heading target is zero.
WaypointSelection select_waypoint(const GlobalPlan& plan, const FreeflyerState& x_now,
                                  double elapsed_time, double replan_period,
                                  double dt_knot);

/// Exponentially decaying information weight gamma0 exp(-t / tau).
double gamma_schedule(double elapsed_time, double gamma0, double tau);

struct LocalPlanParams {
  double dt_knot = 0.5;
  double eps = 1e-6;
  double u_max = 0.4;
  double w_obs = 1e3;
  int max_iters = 200;
  bool coriolis = false;
};

/// Solves the information-weighted tracking problem to `x_target` over N
/// knots by direct single shooting. Throws TargetInCollision; a failed
/// convergence is reported through LocalPlan::converged.
LocalPlan plan_local(const FreeflyerState& x_now, const InertialParams& theta_hat,
                     const FreeflyerState& x_target, const CostWeights& weights,
                     const ObstacleWorld* world, int n, const NoiseModel& noise,
                     const LocalPlan* warm_start = nullptr,
                     const LocalPlanParams& params = {});

struct CostBreakdown {
  double total = 0.0;
  double tracking = 0.0;  ///< state + input + terminal terms
  double info = 0.0;      ///< tr((F + eps I)^{-1}), unweighted
  double penalty = 0.0;
};

/// Cost of a fixed state/input trajectory under the exact objective the
/// optimizer minimizes: total = tracking + gamma * info + penalty.
CostBreakdown plan_cost(const std::vector<FreeflyerState>& states,
                        const std::vector<BodyWrench>& inputs,
                        const CostWeights& weights, const FreeflyerState& x_target,
                        const InertialParams& theta_hat, const NoiseModel& noise,
                        const ObstacleWorld* world = nullptr,
                        const LocalPlanParams& params = {});

}  // namespace ffplan
