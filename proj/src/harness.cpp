#include "ffplan/harness.hpp"

#include <cstdio>
#include <optional>
#include <random>

#include "json.hpp"

namespace ffplan {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return seed * 6364136223846793005ULL + stream * 1442695040888963407ULL + 1ULL;
}

bool in_goal(const GoalRegion& goal, const FreeflyerState& x) {
  return (x.position() - goal.center).norm() <= goal.tol_pos &&
         std::hypot(x.vx, x.vy) <= goal.tol_vel;
}

// Distance from a position to the nearest global plan node; drives the
// optional on-demand global replan.
double distance_to_plan(const GlobalPlan& plan, const Vec2& p) {
  double d = std::numeric_limits<double>::infinity();
  for (const TransNode& n : plan.nodes) d = std::min(d, (n.p - p).norm());
  return d;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const bool cor = cfg.flags.include_coriolis;
  const double dt_c = cfg.rates.control_period();
  const int n_sub = static_cast<int>(std::round(dt_c / cfg.rates.dt_sim));
  const int replan_every = static_cast<int>(std::round(cfg.rates.replan_period / dt_c));
  const int update_every =
      static_cast<int>(std::round(cfg.rates.model_update_period / dt_c));

  std::mt19937_64 rng_meas(mix_seed(cfg.seed, 1));
  std::mt19937_64 rng_proc(mix_seed(cfg.seed, 2));
  std::normal_distribution<double> gauss(0.0, 1.0);

  const RrtParams rrt_params{};
  LocalPlanParams lp_params{};
  lp_params.coriolis = cor;
  MpcConfig mpc_cfg{};
  mpc_cfg.coriolis = cor;

  RunResult res;
  FreeflyerState truth = cfg.x0;
  res.dense_path.push_back({0.0, truth.rx, truth.ry});

  InertialParams theta_model = cfg.theta_init;
  try {
    res.global = plan_global(cfg.x0.position(), cfg.x0.velocity_world(), cfg.goal,
                             cfg.world, theta_model, rrt_params, mix_seed(cfg.seed, 3));
  } catch (const std::exception& e) {
    throw GlobalPlanFailed(e.what());
  }

  EkfBelief belief =
      make_belief(cfg.x0, cfg.theta_init, cfg.sigma_theta0, cfg.noise.sigma_r);
  double last_swap_trace = cfg.sigma_theta0.sum();
  bool clamp_since_swap = false;

  LocalPlan plan;
  double plan_start = 0.0;
  double gamma_now = 0.0;
  int plan_id = -1;
  std::optional<std::vector<BodyWrench>> mpc_warm;

  for (int tick = 0;; ++tick) {
    const double t = tick * dt_c;
    if (in_goal(cfg.goal, truth)) {
      res.reached_goal = true;
      break;
    }
    if (t > cfg.max_sim_time - 1e-12) {
      res.timed_out = true;
      break;
    }

    if (tick > 0 && tick % update_every == 0) {
      ++res.model_updates;
      const ParamEstimate est = param_estimate(belief);
      const double tr = est.cov.trace();
      if (tr < last_swap_trace && !clamp_since_swap) {
        theta_model = est.theta;
        last_swap_trace = tr;
        clamp_since_swap = false;
        mpc_warm.reset();  // avoid stale-model bias right after a swap
        ++res.model_swaps;
      }
    }

    if (tick % replan_every == 0) {
      if (cfg.flags.global_replan && tick > 0 &&
          distance_to_plan(res.global, belief.state().position()) > 0.5) {
        try {
          res.global = plan_global(belief.state().position(),
                                   belief.state().velocity_world(), cfg.goal, cfg.world,
                                   theta_model, rrt_params,
                                   mix_seed(cfg.seed, 4 + res.global_replans));
          ++res.global_replans;
        } catch (const std::exception&) {
          // keep tracking the existing plan
        }
      }
      gamma_now = cfg.flags.informative
                      ? gamma_schedule(t, cfg.gamma0, cfg.tau)
                      : 0.0;
      const WaypointSelection sel = select_waypoint(
          res.global, belief.state(), t, cfg.rates.replan_period, lp_params.dt_knot);
      CostWeights w = CostWeights::defaults();
      w.gamma = gamma_now;
      plan = plan_local(belief.state(), theta_model, sel.target, w, &cfg.world,
                        sel.horizon, cfg.noise, nullptr, lp_params);
      plan_start = t;
      ++plan_id;
      if (tick > 0) ++res.replans;
    }

    Vec6 y = truth.as_vector();
    for (int i = 0; i < 6; ++i) y[i] += std::sqrt(cfg.noise.sigma_r[i]) * gauss(rng_meas);
    y[2] = wrap_angle(y[2]);

    belief = ekf_update(belief, y, cfg.noise);
    if (params_at_bounds(belief)) {
      clamp_since_swap = true;
      ++res.clamp_events;
    }

    const MpcResult mpc =
        mpc_step(belief.state(), theta_model, plan, t - plan_start, mpc_cfg,
                 mpc_warm ? &*mpc_warm : nullptr);
    mpc_warm = mpc.solution;

    const ParamEstimate est = param_estimate(belief);
    res.trace.push_back({t, truth, y, mpc.u0, est.theta.as_vector(),
                         est.cov.diagonal(), gamma_now, plan.info_trace, plan_id});

    for (int s = 0; s < n_sub; ++s) {
      truth = step(cfg.theta_true, truth, mpc.u0, cfg.rates.dt_sim, cor);
      truth.vx += std::sqrt(cfg.noise.sigma_q[3] * cfg.rates.dt_sim) * gauss(rng_proc);
      truth.vy += std::sqrt(cfg.noise.sigma_q[4] * cfg.rates.dt_sim) * gauss(rng_proc);
      truth.omega += std::sqrt(cfg.noise.sigma_q[5] * cfg.rates.dt_sim) * gauss(rng_proc);
      res.dense_path.push_back({t + (s + 1) * cfg.rates.dt_sim, truth.rx, truth.ry});
    }

    belief = ekf_predict(belief, mpc.u0, dt_c, cfg.noise, cor);
  }

  res.final_belief = belief;
  res.duration = res.trace.empty() ? 0.0 : res.trace.back().t;
  return res;
}

MonteCarloSummary monte_carlo(const ScenarioConfig& cfg, int n_runs) {
  if (n_runs < 1) throw std::invalid_argument("monte_carlo: n_runs must be >= 1");
  MonteCarloSummary sum;
  sum.runs = n_runs;
  for (int i = 0; i < n_runs; ++i) {
    ScenarioConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(i);
    try {
      const RunResult r = run_scenario(c);
      const ParamEstimate est = param_estimate(r.final_belief);
      sum.per_run.push_back({c.seed, est.theta.as_vector(), est.cov.diagonal(),
                             r.reached_goal, r.timed_out, r.duration});
    } catch (const std::exception&) {
      ++sum.failures;
    }
  }

  const int n = static_cast<int>(sum.per_run.size());
  if (n > 0) {
    for (const auto& r : sum.per_run) {
      sum.mean_error += r.theta_hat - cfg.theta_true.as_vector();
      sum.mean_final_cov += r.p_theta;
    }
    sum.mean_error /= n;
    sum.mean_final_cov /= n;
    if (n > 1) {
      Vec4 ss = Vec4::Zero();
      for (const auto& r : sum.per_run) {
        const Vec4 d = (r.theta_hat - cfg.theta_true.as_vector()) - sum.mean_error;
        ss += d.cwiseProduct(d);
      }
      sum.std_error = (ss / (n - 1)).cwiseSqrt();
    }
  }
  return sum;
}

CompareResult compare_informative(const ScenarioConfig& cfg, int n_runs) {
  if (n_runs < 2) throw std::invalid_argument("compare_informative: n_runs must be >= 2");
  ScenarioConfig nominal = cfg;
  nominal.flags.informative = false;
  ScenarioConfig informative = cfg;
  informative.flags.informative = true;

  CompareResult out;
  out.nominal = monte_carlo(nominal, n_runs);
  out.informative = monte_carlo(informative, n_runs);
  for (int i = 0; i < 4; ++i) {
    out.reduction_pct[i] = (out.informative.mean_final_cov[i] -
                            out.nominal.mean_final_cov[i]) /
                           out.nominal.mean_final_cov[i] * 100.0;
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

nlohmann::json summary_to_json(const MonteCarloSummary& s) {
  nlohmann::json per_run = nlohmann::json::array();
  for (const auto& r : s.per_run) {
    per_run.push_back({{"seed", r.seed},
                       {"theta_hat", {r.theta_hat[0], r.theta_hat[1], r.theta_hat[2], r.theta_hat[3]}},
                       {"p_theta", {r.p_theta[0], r.p_theta[1], r.p_theta[2], r.p_theta[3]}},
                       {"reached_goal", r.reached_goal},
                       {"timed_out", r.timed_out},
                       {"duration", r.duration}});
  }
  return {{"runs", s.runs},
          {"failures", s.failures},
          {"per_run", per_run},
          {"mean_error", {s.mean_error[0], s.mean_error[1], s.mean_error[2], s.mean_error[3]}},
          {"std_error", {s.std_error[0], s.std_error[1], s.std_error[2], s.std_error[3]}},
          {"mean_final_cov",
           {s.mean_final_cov[0], s.mean_final_cov[1], s.mean_final_cov[2], s.mean_final_cov[3]}}};
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "t,rx,ry,phi,vx,vy,omega,mrx,mry,mphi,mvx,mvy,momega,fx,fy,tau,"
         "m_hat,cx_hat,cy_hat,izz_hat,p_m,p_cx,p_cy,p_izz,gamma,info_trace,plan_id\n";
  for (const TraceRecord& r : trace) {
    out << fmt(r.t);
    const Vec6 x = r.truth.as_vector();
    for (int i = 0; i < 6; ++i) out << ',' << fmt(x[i]);
    for (int i = 0; i < 6; ++i) out << ',' << fmt(r.measured[i]);
    out << ',' << fmt(r.u.fx) << ',' << fmt(r.u.fy) << ',' << fmt(r.u.tau);
    for (int i = 0; i < 4; ++i) out << ',' << fmt(r.theta_hat[i]);
    for (int i = 0; i < 4; ++i) out << ',' << fmt(r.p_theta[i]);
    out << ',' << fmt(r.gamma) << ',' << fmt(r.info_trace) << ',' << r.plan_id << '\n';
  }
}

void write_global_plan_csv(std::ostream& out, const GlobalPlan& plan) {
  out << "t,px,py,vx,vy,fx,fy,duration\n";
  double t = 0.0;
  for (const TransNode& n : plan.nodes) {
    t += n.duration;
    out << fmt(t) << ',' << fmt(n.p.x()) << ',' << fmt(n.p.y()) << ',' << fmt(n.v.x())
        << ',' << fmt(n.v.y()) << ',' << fmt(n.action.x()) << ',' << fmt(n.action.y())
        << ',' << fmt(n.duration) << '\n';
  }
}

std::string monte_carlo_json(const MonteCarloSummary& summary) {
  return summary_to_json(summary).dump(2) + "\n";
}

std::string compare_json(const CompareResult& result) {
  nlohmann::json j = {
      {"nominal", summary_to_json(result.nominal)},
      {"informative", summary_to_json(result.informative)},
      {"reduction_pct",
       {{"m", result.reduction_pct[0]},
        {"cx", result.reduction_pct[1]},
        {"cy", result.reduction_pct[2]},
        {"izz", result.reduction_pct[3]}}}};
  return j.dump(2) + "\n";
}

}  // namespace ffplan
