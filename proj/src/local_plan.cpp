#include "ffplan/local_plan.hpp"

namespace ffplan {

WaypointSelection select_waypoint(const GlobalPlan& plan, const FreeflyerState& x_now,
                                  double elapsed_time, double replan_period,
                                  double dt_knot) {
  (void)x_now;
  if (plan.nodes.empty()) throw std::invalid_argument("select_waypoint: empty plan");

  double t_node = 0.0;
  const TransNode* chosen = &plan.nodes.front();
  double t_chosen = 0.0;
  bool found = false;
  for (const TransNode& n : plan.nodes) {
    t_node += n.duration;
    chosen = &n;
    t_chosen = t_node;
    if (t_node >= elapsed_time + replan_period) {
      found = true;
      break;
    }
  }
  // Plan exhausted: final node stands (loop already left it selected).
  (void)found;

  WaypointSelection sel;
  sel.target = FreeflyerState{};
  sel.target.rx = chosen->p.x();
  sel.target.ry = chosen->p.y();
  // Heading target 0, so world velocity maps directly onto body axes.
  sel.target.vx = chosen->v.x();
  sel.target.vy = chosen->v.y();
  // The plan must stay live until the next replan, so the horizon never
  // shrinks below one replan period even when the global plan is exhausted.
  const double time_to_wp =
      std::max({t_chosen - elapsed_time, replan_period, dt_knot});
  sel.horizon = std::max(2, static_cast<int>(std::ceil(time_to_wp / dt_knot)));
  return sel;
}

double gamma_schedule(double elapsed_time, double gamma0, double tau) {
  return gamma0 * std::exp(-elapsed_time / tau);
}

namespace {

ShootingProblem make_problem(const FreeflyerState& x_now, const InertialParams& theta_hat,
                             const FreeflyerState& x_target, const CostWeights& weights,
                             const ObstacleWorld* world, int n, const NoiseModel& noise,
                             const LocalPlanParams& params) {
  ShootingProblem pb;
  pb.theta = theta_hat;
  pb.x0 = x_now;
  pb.reference.assign(static_cast<std::size_t>(n) + 1, x_target);
  pb.q = weights.q;
  pb.r = weights.r;
  pb.q_f = weights.q_f;
  pb.gamma = weights.gamma;
  pb.eps = params.eps;
  pb.noise = noise;
  pb.world = world;
  pb.w_obs = params.w_obs;
  pb.u_max = params.u_max;
  pb.dt = params.dt_knot;
  pb.max_iters = params.max_iters;
  pb.coriolis = params.coriolis;
  return pb;
}

}  // namespace

LocalPlan plan_local(const FreeflyerState& x_now, const InertialParams& theta_hat,
                     const FreeflyerState& x_target, const CostWeights& weights,
                     const ObstacleWorld* world, int n, const NoiseModel& noise,
                     const LocalPlan* warm_start, const LocalPlanParams& params) {
  if (n < 2) throw std::invalid_argument("plan_local: horizon must be >= 2");
  if (world != nullptr && !world->point_free(x_target.position())) {
    throw TargetInCollision{};
  }

  const ShootingProblem pb =
      make_problem(x_now, theta_hat, x_target, weights, world, n, noise, params);

  std::vector<BodyWrench> init;
  if (warm_start != nullptr && !warm_start->inputs.empty() &&
      warm_start->dt == params.dt_knot) {
    init = warm_start->inputs;
  }
  const ShootingSolution sol = solve_shooting(pb, std::move(init));

  LocalPlan plan;
  plan.states = sol.states;
  plan.inputs = sol.inputs;
  plan.dt = params.dt_knot;
  plan.achieved_cost = sol.cost;
  plan.info_trace = sol.info_value;
  plan.converged = sol.converged;
  return plan;
}

CostBreakdown plan_cost(const std::vector<FreeflyerState>& states,
                        const std::vector<BodyWrench>& inputs,
                        const CostWeights& weights, const FreeflyerState& x_target,
                        const InertialParams& theta_hat, const NoiseModel& noise,
                        const ObstacleWorld* world, const LocalPlanParams& params) {
  if (states.size() != inputs.size() + 1) {
    throw std::invalid_argument("plan_cost: states must have one more knot than inputs");
  }
  ShootingProblem pb = make_problem(states.front(), theta_hat, x_target, weights, world,
                                    static_cast<int>(inputs.size()), noise, params);
  const ShootingSolution sol = evaluate_shooting(pb, inputs);
  CostBreakdown out;
  out.tracking = sol.tracking_cost;
  out.info = sol.info_value;
  out.penalty = sol.penalty_cost;
  out.total = sol.cost;
  return out;
}

}  // namespace ffplan
