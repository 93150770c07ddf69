#pragma once

#include <ostream>

#include "ffplan/control.hpp"
#include "ffplan/estimation.hpp"
#include "ffplan/scenario.hpp"

namespace ffplan {

struct GlobalPlanFailed : std::runtime_error {
  explicit GlobalPlanFailed(const std::string& why)
      : std::runtime_error("global planning failed: " + why) {}
};

/// One control-period row of the experiment log.
struct TraceRecord {
  double t = 0.0;
  FreeflyerState truth;
  Vec6 measured = Vec6::Zero();
  BodyWrench u;
  Vec4 theta_hat = Vec4::Zero();
  Vec4 p_theta = Vec4::Zero();  ///< diag of the parameter covariance
  double gamma = 0.0;
  double info_trace = 0.0;
  int plan_id = 0;
};

/// Ground-truth sample at the simulation step (for dense collision checks).
struct DensePoint {
  double t = 0.0;
  double rx = 0.0;
  double ry = 0.0;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  std::vector<DensePoint> dense_path;
  GlobalPlan global;
  EkfBelief final_belief;
  bool reached_goal = false;
  bool timed_out = false;
  double duration = 0.0;
  int replans = 0;        ///< local replans after the initial plan
  int model_updates = 0;  ///< scheduled update attempts
  int model_swaps = 0;    ///< attempts that passed the gate
  int global_replans = 0;
  int clamp_events = 0;   ///< update steps that left a parameter on a bound
};

/// Executes the closed-loop scenario: one global plan, local replans at the
/// replan period (with the scheduled gamma), 10 Hz measure/update/control,
/// ground truth integrated at dt_sim with process noise, gated model swaps
/// at the model-update period. Deterministic per seed.
RunResult run_scenario(const ScenarioConfig& config);

struct RunRecordSummary {
  std::uint64_t seed = 0;
  Vec4 theta_hat = Vec4::Zero();
  Vec4 p_theta = Vec4::Zero();
  bool reached_goal = false;
  bool timed_out = false;
  double duration = 0.0;
};

struct MonteCarloSummary {
  int runs = 0;
  int failures = 0;
  std::vector<RunRecordSummary> per_run;
  Vec4 mean_error = Vec4::Zero();     ///< mean of theta_hat - theta_true
  Vec4 std_error = Vec4::Zero();      ///< sample std of the same
  Vec4 mean_final_cov = Vec4::Zero(); ///< mean final P_theta diagonal
};

/// Runs the scenario with seeds seed+0 .. seed+n-1 and aggregates.
MonteCarloSummary monte_carlo(const ScenarioConfig& config, int n_runs);

struct CompareResult {
  MonteCarloSummary nominal;      ///< informative = false (gamma = 0)
  MonteCarloSummary informative;  ///< informative = true
  /// (informative - nominal) / nominal * 100, per parameter, on the mean
  /// final-timestep covariance diagonals.
  Vec4 reduction_pct = Vec4::Zero();
};

/// Matched-seed informative-vs-nominal covariance comparison (n_runs >= 2).
CompareResult compare_informative(const ScenarioConfig& config, int n_runs);

/// Fixed-schema CSV trace (header pinned; byte-deterministic formatting).
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);

/// Global plan as CSV rows (t, px, py, vx, vy, fx, fy, duration).
void write_global_plan_csv(std::ostream& out, const GlobalPlan& plan);

/// JSON documents mirroring the summary structs.
std::string monte_carlo_json(const MonteCarloSummary& summary);
std::string compare_json(const CompareResult& result);

}  // namespace ffplan
