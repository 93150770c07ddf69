#pragma once

// Test-side oracles and validators, kept independent of the library code
// paths they check: finite differences for Jacobians, re-typed
// double-integrator propagation and point-circle geometry for plan and
// trace validation, and exhaustive search for the small-instance optimum.

#include <cmath>
#include <random>
#include <string>

#include "ffplan/harness.hpp"
#include "ffplan/local_plan.hpp"

namespace oracles {

using namespace ffplan;

struct FdJacobians {
  Mat6 a;
  Mat63 b;
  Mat64 g;
};

// Central finite differences of state_derivative, h = 1e-6 relative.
inline FdJacobians fd_jacobians(const InertialParams& th, const FreeflyerState& x,
                                const BodyWrench& u, bool coriolis = false) {
  FdJacobians fd;
  auto eval = [&](const Vec6& xs, const Vec3& us, const Vec4& ts) {
    return state_derivative(InertialParams::from_vector(ts),
                            FreeflyerState::from_vector(xs),
                            BodyWrench::from_vector(us), coriolis);
  };
  const Vec6 x0 = x.as_vector();
  const Vec3 u0 = u.as_vector();
  const Vec4 t0 = th.as_vector();
  for (int i = 0; i < 6; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x0[i]));
    Vec6 xp = x0, xm = x0;
    xp[i] += h;
    xm[i] -= h;
    fd.a.col(i) = (eval(xp, u0, t0) - eval(xm, u0, t0)) / (2.0 * h);
  }
  for (int i = 0; i < 3; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(u0[i]));
    Vec3 up = u0, um = u0;
    up[i] += h;
    um[i] -= h;
    fd.b.col(i) = (eval(x0, up, t0) - eval(x0, um, t0)) / (2.0 * h);
  }
  for (int i = 0; i < 4; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(t0[i]));
    Vec4 tp = t0, tm = t0;
    tp[i] += h;
    tm[i] -= h;
    fd.g.col(i) = (eval(x0, u0, tp) - eval(x0, u0, tm)) / (2.0 * h);
  }
  return fd;
}

inline double rel_err(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

// Own geometry, independent of ObstacleWorld helpers.
inline bool point_clear(const ObstacleWorld& w, double px, double py) {
  if (px < w.lo.x() || px > w.hi.x() || py < w.lo.y() || py > w.hi.y()) return false;
  for (const Circle& c : w.obstacles) {
    const double dx = px - c.center.x();
    const double dy = py - c.center.y();
    if (std::sqrt(dx * dx + dy * dy) < c.radius + w.inflation) return false;
  }
  return true;
}

struct CheckResult {
  bool ok = true;
  std::string why;
};

// Independent dense validator for global plans: per-edge dynamics
// consistency (re-propagated), collision at half the planner resolution,
// start/goal conditions, nodes clear of obstacles.
inline CheckResult validate_global_plan(const ObstacleWorld& world, const GlobalPlan& plan,
                                        const Vec2& start_p, const Vec2& start_v,
                                        const GoalRegion& goal, double m_nominal,
                                        double resolution = 0.01) {
  if (plan.nodes.empty()) return {false, "plan empty"};
  if ((plan.nodes.front().p - start_p).norm() > 1e-9 ||
      (plan.nodes.front().v - start_v).norm() > 1e-9) {
    return {false, "first node != start"};
  }
  double total = 0.0;
  for (std::size_t k = 0; k < plan.nodes.size(); ++k) {
    const TransNode& n = plan.nodes[k];
    if (!point_clear(world, n.p.x(), n.p.y())) return {false, "node in obstacle"};
    if (k == 0) continue;
    const TransNode& parent = plan.nodes[k - 1];
    const double T = n.duration;
    total += T;
    const Vec2 a = n.action / m_nominal;
    const Vec2 p_pred = parent.p + parent.v * T + 0.5 * a * T * T;
    const Vec2 v_pred = parent.v + a * T;
    if ((p_pred - n.p).norm() > 1e-9 || (v_pred - n.v).norm() > 1e-9) {
      return {false, "edge dynamics inconsistent"};
    }
    const double v_peak = std::max(parent.v.norm(), v_pred.norm());
    const int steps = std::max(1, static_cast<int>(std::ceil(v_peak * T / resolution)));
    for (int i = 0; i <= steps; ++i) {
      const double t = T * i / steps;
      const Vec2 pt = parent.p + parent.v * t + 0.5 * a * t * t;
      if (!point_clear(world, pt.x(), pt.y())) return {false, "edge collides"};
    }
  }
  const TransNode& last = plan.nodes.back();
  if ((last.p - goal.center).norm() > goal.tol_pos) return {false, "goal position missed"};
  if (last.v.norm() > goal.tol_vel) return {false, "goal velocity missed"};
  if (std::abs(total - plan.total_time) > 1e-9) return {false, "total_time mismatch"};
  return {};
}

// Standalone trace checker: monotone time, bounded wrenches, nonnegative
// parameter covariance diagonals, dense ground-truth path collision-free.
inline CheckResult validate_trace(const RunResult& res, const ObstacleWorld& world,
                                  double u_max) {
  double prev_t = -1.0;
  for (const TraceRecord& r : res.trace) {
    if (!(r.t > prev_t)) return {false, "time not strictly increasing"};
    prev_t = r.t;
    if (std::abs(r.u.fx) > u_max + 1e-12 || std::abs(r.u.fy) > u_max + 1e-12 ||
        std::abs(r.u.tau) > u_max + 1e-12) {
      return {false, "wrench exceeds u_max"};
    }
    if ((r.p_theta.array() < 0.0).any()) return {false, "negative parameter variance"};
  }
  for (const DensePoint& p : res.dense_path) {
    if (!point_clear(world, p.rx, p.ry)) return {false, "ground-truth path collides"};
  }
  return {};
}

// Exhaustive search over a 2-knot x-force parameterization; cost evaluated
// through plan_cost, so only the optimization route differs.
inline double grid_search_two_knot(const InertialParams& th, const FreeflyerState& x0,
                                   const FreeflyerState& target, const CostWeights& w,
                                   const NoiseModel& noise, const LocalPlanParams& params,
                                   int grid_n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid_n; ++i) {
    const double f0 = -params.u_max + 2.0 * params.u_max * i / grid_n;
    const FreeflyerState x1 = step(th, x0, {f0, 0.0, 0.0}, params.dt_knot);
    for (int j = 0; j <= grid_n; ++j) {
      const double f1 = -params.u_max + 2.0 * params.u_max * j / grid_n;
      const FreeflyerState x2 = step(th, x1, {f1, 0.0, 0.0}, params.dt_knot);
      const CostBreakdown c = plan_cost({x0, x1, x2}, {{f0, 0.0, 0.0}, {f1, 0.0, 0.0}},
                                        w, target, th, noise, nullptr, params);
      best = std::min(best, c.total);
    }
  }
  return best;
}

inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline InertialParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> um(5.0, 50.0);
  std::uniform_real_distribution<double> uc(-0.3, 0.3);
  std::uniform_real_distribution<double> ui(0.05, 2.0);
  return {um(rng), uc(rng), uc(rng), ui(rng)};
}

inline FreeflyerState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> up(-2.0, 2.0);
  std::uniform_real_distribution<double> ua(-M_PI, M_PI);
  std::uniform_real_distribution<double> uv(-0.3, 0.3);
  std::uniform_real_distribution<double> uw(-0.5, 0.5);
  return {up(rng), up(rng), ua(rng), uv(rng), uv(rng), uw(rng)};
}

inline BodyWrench random_wrench(std::mt19937_64& rng, double u_max = 0.4) {
  std::uniform_real_distribution<double> uu(-u_max, u_max);
  return {uu(rng), uu(rng), uu(rng)};
}

}  // namespace oracles
