#include "ffplan/global_plan.hpp"

#include <algorithm>
#include <chrono>

namespace ffplan {

namespace {

// Closed-form double-integrator propagation under constant force.
void propagate(const Vec2& p, const Vec2& v, const Vec2& force, double mass,
               double t, Vec2& p_out, Vec2& v_out) {
  const Vec2 a = force / mass;
  p_out = p + v * t + 0.5 * a * t * t;
  v_out = v + a * t;
}

double node_distance(const Vec2& dp, const Vec2& dv, double vel_weight) {
  return dp.norm() + vel_weight * dv.norm();
}

}  // namespace

std::pair<Vec2, Vec2> sample_free(const ObstacleWorld& world, std::mt19937_64& rng,
                                  const RrtParams& params, const GoalRegion& goal) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) < params.goal_bias && world.point_free(goal.center)) {
    return {goal.center, Vec2::Zero()};
  }
  std::uniform_real_distribution<double> ux(world.lo.x(), world.hi.x());
  std::uniform_real_distribution<double> uy(world.lo.y(), world.hi.y());
  std::uniform_real_distribution<double> uv(-params.v_max, params.v_max);
  for (int i = 0; i < 10000; ++i) {
    const Vec2 p{ux(rng), uy(rng)};
    if (!world.point_free(p)) continue;
    return {p, Vec2{uv(rng), uv(rng)}};
  }
  throw WorldFull{};
}

TransNode steer(const TransNode& from, const Vec2& p_toward, const Vec2& v_toward,
                const InertialParams& theta_nominal, const RrtParams& params) {
  TransNode best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int ix = -1; ix <= 1; ++ix) {
    for (int iy = -1; iy <= 1; ++iy) {
      const Vec2 f{ix * params.u_max, iy * params.u_max};
      Vec2 p, v;
      propagate(from.p, from.v, f, theta_nominal.m, params.dt_prim, p, v);
      const double d = node_distance(p - p_toward, v - v_toward, params.vel_weight);
      if (d < best_d) {
        best_d = d;
        best = TransNode{p, v, -1, f, params.dt_prim};
      }
    }
  }
  return best;
}

bool collision_check(const ObstacleWorld& world, const Vec2& p, const Vec2& v,
                     const Vec2& action, const InertialParams& theta_nominal,
                     double duration, double resolution) {
  const Vec2 a = action / theta_nominal.m;
  // Speed along the sweep is |v + a t|, convex in t, so its max is at an
  // endpoint; time-uniform sampling at v_peak keeps spacing <= resolution.
  const double v_peak = std::max(v.norm(), (v + a * duration).norm());
  const int n = std::max(1, static_cast<int>(std::ceil(v_peak * duration / resolution)));
  for (int i = 0; i <= n; ++i) {
    const double t = duration * i / n;
    const Vec2 pt = p + v * t + 0.5 * a * t * t;
    if (!world.point_free(pt)) return false;
  }
  return true;
}

GlobalPlan plan_global(const Vec2& p0, const Vec2& v0, const GoalRegion& goal,
                       const ObstacleWorld& world, const InertialParams& theta_nominal,
                       const RrtParams& params, std::uint64_t seed) {
  if (!world.point_free(p0)) throw StartInCollision{};

  auto in_goal = [&goal](const TransNode& n) {
    return (n.p - goal.center).norm() <= goal.tol_pos && n.v.norm() <= goal.tol_vel;
  };
  auto backtrack = [](const std::vector<TransNode>& tree, int leaf) {
    GlobalPlan plan;
    for (int i = leaf; i >= 0; i = tree[i].parent) plan.nodes.push_back(tree[i]);
    std::reverse(plan.nodes.begin(), plan.nodes.end());
    plan.nodes.front().parent = -1;
    for (std::size_t k = 1; k < plan.nodes.size(); ++k) {
      plan.nodes[k].parent = static_cast<int>(k) - 1;
      plan.total_time += plan.nodes[k].duration;
    }
    return plan;
  };

  std::vector<TransNode> tree;
  tree.push_back(TransNode{p0, v0, -1, Vec2::Zero(), 0.0});
  if (in_goal(tree[0])) return backtrack(tree, 0);

  std::mt19937_64 rng(seed);
  const auto t_start = std::chrono::steady_clock::now();
  for (int iter = 0; iter < params.max_iters; ++iter) {
    if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count() > params.max_seconds) {
      break;
    }
    const auto [ps, vs] = sample_free(world, rng, params, goal);

    int nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const double d = node_distance(tree[i].p - ps, tree[i].v - vs, params.vel_weight);
      if (d < nearest_d) {
        nearest_d = d;
        nearest = static_cast<int>(i);
      }
    }

    TransNode cand = steer(tree[nearest], ps, vs, theta_nominal, params);
    if (!collision_check(world, tree[nearest].p, tree[nearest].v, cand.action,
                         theta_nominal, params.dt_prim, params.collision_res)) {
      continue;
    }
    cand.parent = nearest;
    tree.push_back(cand);
    if (in_goal(cand)) return backtrack(tree, static_cast<int>(tree.size()) - 1);
  }
  throw NoPlanFound{};
}

}  // namespace ffplan
