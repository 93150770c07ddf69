#pragma once

#include <cstdint>
#include <string>

#include "ffplan/estimation.hpp"
#include "ffplan/global_plan.hpp"

namespace ffplan {

struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/// Loop rates of the closed-loop simulation. dt_sim must divide the control
/// period, which must divide the replan and model-update periods.
struct Rates {
  double dt_sim = 0.02;              ///< ground-truth integration step [s]
  double control_hz = 10.0;          ///< control / measurement rate [Hz]
  double replan_period = 12.0;       ///< local replan cadence [s]
  double model_update_period = 16.0; ///< model swap cadence [s]

  double control_period() const { return 1.0 / control_hz; }
};

struct ScenarioFlags {
  bool informative = true;     ///< false pins gamma to 0
  bool global_replan = false;  ///< allow on-demand global replanning
  bool include_coriolis = false;
};

/// Full experiment description; loadable from a JSON scenario file whose
/// keys match these field names exactly (unknown keys are errors).
struct ScenarioConfig {
  InertialParams theta_true;
  InertialParams theta_init;
  Vec4 sigma_theta0 = Vec4{25.0, 0.01, 0.01, 0.25};
  ObstacleWorld world;
  FreeflyerState x0;
  GoalRegion goal;
  Rates rates;
  double gamma0 = 5.0;
  double tau = 10.0;
  NoiseModel noise = NoiseModel::defaults();
  std::uint64_t seed = 0;
  double max_sim_time = 120.0;
  ScenarioFlags flags;

  void validate() const;
};

/// Parses and validates a scenario file. Throws ScenarioError with the
/// offending key or constraint.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace ffplan
