#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support/oracles.hpp"

using namespace ffplan;

namespace {

const InertialParams kAstrobee{19.568, 0.0, 0.0, 0.282};
const InertialParams kCombined{31.368, 0.0, -0.115, 0.980};

GlobalPlan ladder_plan(int n_nodes, double dt_node) {
  GlobalPlan plan;
  for (int k = 0; k < n_nodes; ++k) {
    TransNode n;
    n.p = {0.1 * k, 0.0};
    n.v = {0.05, 0.0};
    n.parent = k - 1;
    n.duration = k == 0 ? 0.0 : dt_node;
    plan.nodes.push_back(n);
    if (k > 0) plan.total_time += dt_node;
  }
  return plan;
}

FreeflyerState target_at(double x) {
  FreeflyerState t;
  t.rx = x;
  return t;
}

}  // namespace

TEST_CASE("waypoint selection looks one replan period ahead") {
  const GlobalPlan plan = ladder_plan(11, 2.0);  // nodes at t = 0, 2, ..., 20

  const WaypointSelection sel = select_waypoint(plan, FreeflyerState{}, 0.0, 12.0, 0.5);
  CHECK(sel.target.rx == doctest::Approx(0.6));  // node at t = 12
  CHECK(sel.horizon == 24);

  // Elapsed beyond the plan end: final node, minimum (one replan period)
  // horizon so the reference stays live until the next replan.
  const WaypointSelection tail = select_waypoint(plan, FreeflyerState{}, 100.0, 12.0, 0.5);
  CHECK(tail.target.rx == doctest::Approx(1.0));
  CHECK(tail.horizon == 24);
}

TEST_CASE("gamma schedule decays exponentially") {
  CHECK(gamma_schedule(0.0, 5.0, 10.0) == 5.0);
  CHECK(gamma_schedule(10.0, 5.0, 10.0) == doctest::Approx(5.0 / M_E).epsilon(1e-12));
  CHECK(gamma_schedule(10.0 * std::log(2.0), 2.0, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("planning at the target is a fixed point") {
  CostWeights w = CostWeights::defaults();
  const LocalPlan plan = plan_local(FreeflyerState{}, kAstrobee, FreeflyerState{}, w,
                                    nullptr, 8, NoiseModel::defaults());
  CHECK(plan.achieved_cost == doctest::Approx(0.0).epsilon(1e-12));
  for (const BodyWrench& u : plan.inputs) CHECK(u.as_vector().norm() == 0.0);
  CHECK(plan.converged);
}

TEST_CASE("two-knot solution matches the exhaustive grid oracle within 1%") {
  CostWeights w = CostWeights::defaults();
  LocalPlanParams params;
  const FreeflyerState target = target_at(0.5);

  const double oracle = oracles::grid_search_two_knot(
      kAstrobee, FreeflyerState{}, target, w, NoiseModel::defaults(), params, 800);
  const LocalPlan plan = plan_local(FreeflyerState{}, kAstrobee, target, w, nullptr, 2,
                                    NoiseModel::defaults(), nullptr, params);
  CHECK(std::abs(plan.achieved_cost - oracle) <= 0.01 * oracle);
}

TEST_CASE("information weighting trades tracking for excitation") {
  LocalPlanParams params;
  const FreeflyerState target = target_at(0.8);
  CostWeights w0 = CostWeights::defaults();
  w0.gamma = 0.0;
  CostWeights w10 = CostWeights::defaults();
  w10.gamma = 10.0;

  const LocalPlan p0 = plan_local(FreeflyerState{}, kCombined, target, w0, nullptr, 16,
                                  NoiseModel::defaults(), nullptr, params);
  const LocalPlan p10 = plan_local(FreeflyerState{}, kCombined, target, w10, nullptr, 16,
                                   NoiseModel::defaults(), nullptr, params);

  CHECK(p10.info_trace < p0.info_trace);
  const CostBreakdown c0 = plan_cost(p0.states, p0.inputs, w0, target, kCombined,
                                     NoiseModel::defaults(), nullptr, params);
  const CostBreakdown c10 = plan_cost(p10.states, p10.inputs, w0, target, kCombined,
                                      NoiseModel::defaults(), nullptr, params);
  CHECK(c10.tracking > c0.tracking);
}

TEST_CASE("mean info trace improves over seeds with gamma on") {
  LocalPlanParams params;
  auto rng = oracles::test_rng(55);
  std::uniform_real_distribution<double> ut(0.4, 1.0);
  double mean0 = 0.0, mean5 = 0.0;
  const int seeds = 10;
  for (int i = 0; i < seeds; ++i) {
    const FreeflyerState target = target_at(ut(rng));
    CostWeights w = CostWeights::defaults();
    const LocalPlan p0 = plan_local(FreeflyerState{}, kCombined, target, w, nullptr, 12,
                                    NoiseModel::defaults(), nullptr, params);
    w.gamma = 5.0;
    const LocalPlan p5 = plan_local(FreeflyerState{}, kCombined, target, w, nullptr, 12,
                                    NoiseModel::defaults(), nullptr, params);
    mean0 += p0.info_trace;
    mean5 += p5.info_trace;
  }
  CHECK(mean5 / seeds < mean0 / seeds);
}

TEST_CASE("returned plans satisfy the contract invariants") {
  LocalPlanParams params;
  CostWeights w = CostWeights::defaults();
  w.gamma = 2.0;
  ObstacleWorld world;
  world.lo = {-1.0, -1.0};
  world.hi = {3.0, 3.0};
  world.inflation = 0.16;
  world.obstacles.push_back({{0.5, 0.3}, 0.2});

  const FreeflyerState target = target_at(1.0);
  const LocalPlan plan = plan_local(FreeflyerState{}, kCombined, target, w, &world, 12,
                                    NoiseModel::defaults(), nullptr, params);

  // Dynamics defects at the planning model.
  for (std::size_t k = 0; k + 1 < plan.states.size(); ++k) {
    const Vec6 want = step(kCombined, plan.states[k], plan.inputs[k], plan.dt).as_vector();
    CHECK((plan.states[k + 1].as_vector() - want).norm() <= 1e-9);
  }
  // Input box.
  for (const BodyWrench& u : plan.inputs) {
    CHECK(std::abs(u.fx) <= params.u_max + 1e-12);
    CHECK(std::abs(u.fy) <= params.u_max + 1e-12);
    CHECK(std::abs(u.tau) <= params.u_max + 1e-12);
  }
  // Monotone descent against the zero-input initial guess.
  std::vector<FreeflyerState> zero_states{FreeflyerState{}};
  std::vector<BodyWrench> zero_inputs(12, BodyWrench{});
  for (int k = 0; k < 12; ++k) {
    zero_states.push_back(step(kCombined, zero_states.back(), BodyWrench{}, plan.dt));
  }
  const CostBreakdown zero_cost = plan_cost(zero_states, zero_inputs, w, target,
                                            kCombined, NoiseModel::defaults(), &world,
                                            params);
  CHECK(plan.achieved_cost <= zero_cost.total + 1e-9);
}

TEST_CASE("target inside an obstacle is rejected") {
  ObstacleWorld world;
  world.lo = {-1.0, -1.0};
  world.hi = {3.0, 3.0};
  world.obstacles.push_back({{1.0, 0.0}, 0.3});
  CHECK_THROWS_AS(plan_local(FreeflyerState{}, kCombined, target_at(1.0),
                             CostWeights::defaults(), &world, 8, NoiseModel::defaults()),
                  TargetInCollision);
}

TEST_CASE("cost decomposition") {
  LocalPlanParams params;
  const NoiseModel noise = NoiseModel::defaults();

  // A resting trajectory at the target with gamma = 0.
  CostWeights w = CostWeights::defaults();
  std::vector<FreeflyerState> states(5, FreeflyerState{});
  std::vector<BodyWrench> inputs(4, BodyWrench{});
  const CostBreakdown c =
      plan_cost(states, inputs, w, FreeflyerState{}, kCombined, noise, nullptr, params);
  CHECK(c.total == 0.0);
  CHECK(c.tracking == 0.0);
  CHECK(c.info > 0.0);  // reported even when unused

  // gamma = 0 makes the total independent of the measurement noise.
  auto rng = oracles::test_rng(56);
  std::vector<FreeflyerState> traj{FreeflyerState{}};
  std::vector<BodyWrench> u;
  for (int k = 0; k < 6; ++k) {
    u.push_back(oracles::random_wrench(rng));
    traj.push_back(step(kCombined, traj.back(), u.back(), params.dt_knot));
  }
  NoiseModel scaled = noise;
  scaled.sigma_r *= 7.0;
  const FreeflyerState target = target_at(0.4);
  const CostBreakdown ca = plan_cost(traj, u, w, target, kCombined, noise, nullptr, params);
  const CostBreakdown cb = plan_cost(traj, u, w, target, kCombined, scaled, nullptr, params);
  CHECK(ca.total == cb.total);

  // Doubling R adds exactly the input-cost contribution.
  CostWeights w2 = w;
  w2.r *= 2.0;
  const CostBreakdown c2 = plan_cost(traj, u, w2, target, kCombined, noise, nullptr, params);
  double input_cost = 0.0;
  for (const BodyWrench& uk : u) {
    input_cost += uk.as_vector().dot(w.r * uk.as_vector());
  }
  CHECK(c2.total - ca.total == doctest::Approx(input_cost).epsilon(1e-12));

  // total = tracking + gamma * info + penalty.
  CostWeights wg = w;
  wg.gamma = 3.0;
  const CostBreakdown cg = plan_cost(traj, u, wg, target, kCombined, noise, nullptr, params);
  CHECK(cg.total ==
        doctest::Approx(cg.tracking + 3.0 * cg.info + cg.penalty).epsilon(1e-12));
}
