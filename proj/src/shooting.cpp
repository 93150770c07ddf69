#include "ffplan/shooting.hpp"

#include <stdexcept>

namespace ffplan {

namespace {

using Eigen::VectorXd;

Vec6 state_error(const FreeflyerState& x, const FreeflyerState& ref) {
  Vec6 e = x.as_vector() - ref.as_vector();
  e[2] = angle_diff(x.phi, ref.phi);
  return e;
}

double obstacle_penalty(const ShootingProblem& pb, const FreeflyerState& x) {
  if (pb.world == nullptr) return 0.0;
  double pen = 0.0;
  for (const Circle& c : pb.world->obstacles) {
    const double d = (x.position() - c.center).norm();
    const double h = (c.radius + pb.world->inflation) - d;
    if (h > 0.0) pen += pb.w_obs * h * h;
  }
  return pen;
}

Vec6 obstacle_penalty_gradient(const ShootingProblem& pb, const FreeflyerState& x) {
  Vec6 g = Vec6::Zero();
  if (pb.world == nullptr) return g;
  for (const Circle& c : pb.world->obstacles) {
    const Vec2 dp = x.position() - c.center;
    const double d = dp.norm();
    const double h = (c.radius + pb.world->inflation) - d;
    if (h > 0.0 && d > 1e-12) {
      g.head<2>() += (-2.0 * pb.w_obs * h / d) * dp;
    }
  }
  return g;
}

// One RK4 step together with the exact discrete tangents
// a_d = d x_next / d x and b_d = d x_next / d u.
FreeflyerState rk4_with_tangents(const ShootingProblem& pb, const FreeflyerState& x,
                                 const BodyWrench& u, Mat6& a_d, Mat63& b_d) {
  const double dt = pb.dt;
  const Vec6 x0 = x.as_vector();
  auto f = [&](const Vec6& z) {
    return state_derivative(pb.theta, FreeflyerState::from_vector(z), u, pb.coriolis);
  };
  auto jac = [&](const Vec6& z) {
    return jacobians(pb.theta, FreeflyerState::from_vector(z), u, pb.coriolis);
  };

  const Vec6 k1 = f(x0);
  const Jacobians j1 = jac(x0);
  const Mat6 dk1 = j1.a;
  const Mat63 ek1 = j1.b;

  const Vec6 xb = x0 + 0.5 * dt * k1;
  const Vec6 k2 = f(xb);
  const Jacobians j2 = jac(xb);
  const Mat6 dk2 = j2.a * (Mat6::Identity() + 0.5 * dt * dk1);
  const Mat63 ek2 = j2.a * (0.5 * dt * ek1) + j2.b;

  const Vec6 xc = x0 + 0.5 * dt * k2;
  const Vec6 k3 = f(xc);
  const Jacobians j3 = jac(xc);
  const Mat6 dk3 = j3.a * (Mat6::Identity() + 0.5 * dt * dk2);
  const Mat63 ek3 = j3.a * (0.5 * dt * ek2) + j3.b;

  const Vec6 xd = x0 + dt * k3;
  const Vec6 k4 = f(xd);
  const Jacobians j4 = jac(xd);
  const Mat6 dk4 = j4.a * (Mat6::Identity() + dt * dk3);
  const Mat63 ek4 = j4.a * (dt * ek3) + j4.b;

  a_d = Mat6::Identity() + (dt / 6.0) * (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4);
  b_d = (dt / 6.0) * (ek1 + 2.0 * ek2 + 2.0 * ek3 + ek4);

  FreeflyerState out =
      FreeflyerState::from_vector(x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  out.phi = wrap_angle(out.phi);
  return out;
}

std::vector<FreeflyerState> rollout(const ShootingProblem& pb,
                                    const std::vector<BodyWrench>& inputs) {
  std::vector<FreeflyerState> states;
  states.reserve(inputs.size() + 1);
  states.push_back(pb.x0);
  for (const BodyWrench& u : inputs) {
    states.push_back(step(pb.theta, states.back(), u, pb.dt, pb.coriolis));
  }
  return states;
}

double info_value_of(const ShootingProblem& pb, const std::vector<BodyWrench>& inputs) {
  const FimMatrix f =
      fim_along_trajectory(pb.theta, pb.x0, inputs, pb.dt, pb.noise, pb.coriolis);
  return a_optimality(f, pb.eps);
}

struct CostPieces {
  double tracking = 0.0;
  double penalty = 0.0;
};

CostPieces tracking_and_penalty(const ShootingProblem& pb,
                                const std::vector<FreeflyerState>& states,
                                const std::vector<BodyWrench>& inputs) {
  const std::size_t n = inputs.size();
  CostPieces c;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec6 e = state_error(states[k], pb.reference[k]);
    const Vec3 u = inputs[k].as_vector();
    c.tracking += e.dot(pb.q * e) + u.dot(pb.r * u);
    c.penalty += obstacle_penalty(pb, states[k]);
  }
  const Vec6 ef = state_error(states[n], pb.reference[n]);
  c.tracking += ef.dot(pb.q_f * ef);
  c.penalty += obstacle_penalty(pb, states[n]);
  return c;
}

// Objective value used inside the optimizer; skips the information rollout
// entirely when gamma is zero.
double objective(const ShootingProblem& pb, const std::vector<BodyWrench>& inputs) {
  const auto states = rollout(pb, inputs);
  const CostPieces c = tracking_and_penalty(pb, states, inputs);
  double j = c.tracking + c.penalty;
  if (pb.gamma > 0.0) j += pb.gamma * info_value_of(pb, inputs);
  return j;
}

// Adjoint pass for the tracking + penalty terms, plus differenced
// information gradient; returns d J / d u flattened (3 per knot).
VectorXd gradient(const ShootingProblem& pb, const std::vector<BodyWrench>& inputs) {
  const std::size_t n = inputs.size();
  std::vector<Mat6> a_d(n);
  std::vector<Mat63> b_d(n);
  std::vector<FreeflyerState> states;
  states.reserve(n + 1);
  states.push_back(pb.x0);
  for (std::size_t k = 0; k < n; ++k) {
    states.push_back(rk4_with_tangents(pb, states[k], inputs[k], a_d[k], b_d[k]));
  }

  VectorXd grad = VectorXd::Zero(3 * n);
  Vec6 lambda = 2.0 * (pb.q_f * state_error(states[n], pb.reference[n])) +
                obstacle_penalty_gradient(pb, states[n]);
  for (int k = static_cast<int>(n) - 1; k >= 0; --k) {
    grad.segment<3>(3 * k) =
        2.0 * (pb.r * inputs[k].as_vector()) + b_d[k].transpose() * lambda;
    lambda = 2.0 * (pb.q * state_error(states[k], pb.reference[k])) +
             obstacle_penalty_gradient(pb, states[k]) + a_d[k].transpose() * lambda;
  }

  if (pb.gamma > 0.0) {
    const double h = pb.fd_step_rel * pb.u_max;
    const double base = info_value_of(pb, inputs);
    std::vector<BodyWrench> pert = inputs;
    for (std::size_t k = 0; k < n; ++k) {
      for (int c = 0; c < 3; ++c) {
        Vec3 u = inputs[k].as_vector();
        u[c] += h;
        pert[k] = BodyWrench::from_vector(u);
        grad[3 * k + c] += pb.gamma * (info_value_of(pb, pert) - base) / h;
        pert[k] = inputs[k];
      }
    }
  }
  return grad;
}

VectorXd flatten(const std::vector<BodyWrench>& inputs) {
  VectorXd v(3 * inputs.size());
  for (std::size_t k = 0; k < inputs.size(); ++k) v.segment<3>(3 * k) = inputs[k].as_vector();
  return v;
}

std::vector<BodyWrench> unflatten(const VectorXd& v) {
  std::vector<BodyWrench> inputs(v.size() / 3);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    inputs[k] = BodyWrench::from_vector(v.segment<3>(3 * k));
  }
  return inputs;
}

}  // namespace

ShootingSolution evaluate_shooting(const ShootingProblem& pb,
                                   const std::vector<BodyWrench>& inputs) {
  if (pb.reference.size() != inputs.size() + 1) {
    throw std::invalid_argument("shooting: reference must have N+1 knots");
  }
  ShootingSolution sol;
  sol.inputs = inputs;
  sol.states = rollout(pb, inputs);
  const CostPieces c = tracking_and_penalty(pb, sol.states, inputs);
  sol.tracking_cost = c.tracking;
  sol.penalty_cost = c.penalty;
  sol.info_value = inputs.empty() ? 0.0 : info_value_of(pb, inputs);
  sol.cost = c.tracking + c.penalty + pb.gamma * sol.info_value;
  return sol;
}

ShootingSolution solve_shooting(const ShootingProblem& pb, std::vector<BodyWrench> init) {
  const std::size_t n = pb.reference.size() - 1;
  if (pb.reference.size() < 2) {
    throw std::invalid_argument("shooting: need at least 2 reference knots");
  }
  init.resize(n, init.empty() ? BodyWrench{} : init.back());

  auto project = [&pb](VectorXd v) {
    return v.cwiseMax(-pb.u_max).cwiseMin(pb.u_max).eval();
  };

  VectorXd u = project(flatten(init));
  double cost = objective(pb, unflatten(u));
  bool converged = false;
  int iters = 0;

  VectorXd u_prev, g_prev;
  double alpha = 1.0;
  for (; iters < pb.max_iters; ++iters) {
    const VectorXd g = gradient(pb, unflatten(u));

    const double pg_norm = (u - project(u - g)).norm();
    if (pg_norm <= pb.grad_tol) {
      converged = true;
      break;
    }

    // Barzilai-Borwein spectral step with safeguards.
    if (iters > 0) {
      const VectorXd s = u - u_prev;
      const VectorXd y = g - g_prev;
      const double sy = s.dot(y);
      alpha = sy > 1e-300 ? s.squaredNorm() / sy : 1.0;
    } else {
      alpha = 1.0 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
    }
    alpha = std::clamp(alpha, 1e-12, 1e12);

    u_prev = u;
    g_prev = g;

    bool accepted = false;
    double trial_cost = cost;
    VectorXd u_new;
    for (int ls = 0; ls < 60; ++ls) {
      u_new = project(u - alpha * g);
      const double directional = g.dot(u - u_new);
      if (directional <= 0.0) break;
      trial_cost = objective(pb, unflatten(u_new));
      if (trial_cost <= cost - 1e-4 * directional) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // line search stalled; best iterate stands

    const double decrease = cost - trial_cost;
    u = u_new;
    cost = trial_cost;
    if (decrease <= pb.cost_tol) {
      converged = true;
      break;
    }
  }

  ShootingSolution sol = evaluate_shooting(pb, unflatten(u));
  sol.converged = converged;
  sol.iters = iters;
  return sol;
}

}  // namespace ffplan
