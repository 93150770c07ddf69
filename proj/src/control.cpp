#include "ffplan/control.hpp"

namespace ffplan {

FreeflyerState interpolate_plan(const LocalPlan& plan, double t) {
  if (plan.states.empty()) throw std::invalid_argument("interpolate_plan: empty plan");
  if (plan.states.size() == 1 || t <= 0.0) {
    return t <= 0.0 ? plan.states.front() : plan.states.back();
  }
  const double span = plan.span();
  if (t >= span) return plan.states.back();

  const double s = t / plan.dt;
  const std::size_t k = std::min(static_cast<std::size_t>(s), plan.states.size() - 2);
  const double a = s - static_cast<double>(k);
  const FreeflyerState& x0 = plan.states[k];
  const FreeflyerState& x1 = plan.states[k + 1];

  FreeflyerState out;
  out.rx = x0.rx + a * (x1.rx - x0.rx);
  out.ry = x0.ry + a * (x1.ry - x0.ry);
  out.phi = wrap_angle(x0.phi + a * angle_diff(x1.phi, x0.phi));
  out.vx = x0.vx + a * (x1.vx - x0.vx);
  out.vy = x0.vy + a * (x1.vy - x0.vy);
  out.omega = x0.omega + a * (x1.omega - x0.omega);
  return out;
}

MpcResult mpc_step(const FreeflyerState& x_now, const InertialParams& theta_hat,
                   const LocalPlan& local_plan, double elapsed_in_plan,
                   const MpcConfig& config, const std::vector<BodyWrench>* warm) {
  ShootingProblem pb;
  pb.theta = theta_hat;
  pb.x0 = x_now;
  pb.reference.resize(static_cast<std::size_t>(config.horizon_nc) + 1);
  for (int i = 0; i <= config.horizon_nc; ++i) {
    pb.reference[i] = interpolate_plan(local_plan, elapsed_in_plan + i * config.dt_c);
  }
  pb.q = config.weights.q;
  pb.r = config.weights.r;
  pb.q_f = config.weights.q_f;
  pb.gamma = 0.0;
  pb.u_max = config.u_max;
  pb.dt = config.dt_c;
  pb.coriolis = config.coriolis;

  std::vector<BodyWrench> init;
  if (warm != nullptr && !warm->empty()) {
    init.assign(warm->begin() + 1, warm->end());  // shift by one knot
    init.push_back(warm->back());
  }
  const ShootingSolution sol = solve_shooting(pb, std::move(init));

  MpcResult res;
  res.u0 = sol.inputs.front().clamped(config.u_max);
  res.predicted = sol.states;
  res.solution = sol.inputs;
  res.converged = sol.converged;
  return res;
}

}  // namespace ffplan
