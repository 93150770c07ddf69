#include "ffplan/scenario.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace ffplan {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& section,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ScenarioError(section + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ScenarioError("unknown key '" + key + "' in " + section);
    }
  }
  for (const std::string& key : allowed) {
    if (!obj.contains(key)) {
      throw ScenarioError("missing key '" + key + "' in " + section);
    }
  }
}

double get_num(const json& obj, const std::string& section, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ScenarioError(section + "." + key + " must be a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const std::string& section, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ScenarioError(section + "." + key + " must be a boolean");
  return v.get<bool>();
}

template <typename Vec>
Vec get_array(const json& obj, const std::string& section, const std::string& key) {
  const json& v = obj.at(key);
  Vec out;
  if (!v.is_array() || v.size() != static_cast<std::size_t>(out.size())) {
    throw ScenarioError(section + "." + key + " must be an array of " +
                        std::to_string(out.size()) + " numbers");
  }
  for (int i = 0; i < out.size(); ++i) {
    if (!v[i].is_number()) throw ScenarioError(section + "." + key + " must be numeric");
    out[i] = v[i].get<double>();
  }
  return out;
}

InertialParams parse_params(const json& obj, const std::string& section) {
  require_keys(obj, section, {"m", "cx", "cy", "izz"});
  return {get_num(obj, section, "m"), get_num(obj, section, "cx"),
          get_num(obj, section, "cy"), get_num(obj, section, "izz")};
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!theta_true.valid()) throw ScenarioError("theta_true violates invariants");
  if (!theta_init.valid()) throw ScenarioError("theta_init violates invariants");
  if (!(sigma_theta0.array() > 0.0).all()) {
    throw ScenarioError("theta_init.sigma0 must be strictly positive");
  }
  try {
    world.validate();
  } catch (const std::exception& e) {
    throw ScenarioError(std::string("world: ") + e.what());
  }
  if (!noise.valid()) throw ScenarioError("noise covariances must be strictly positive");
  if (!(rates.dt_sim > 0.0) || !(rates.control_hz > 0.0) ||
      !(rates.replan_period > 0.0) || !(rates.model_update_period > 0.0)) {
    throw ScenarioError("rates must be strictly positive");
  }
  auto divides = [](double small, double big) {
    const double q = big / small;
    return std::abs(q - std::round(q)) < 1e-9;
  };
  if (!divides(rates.dt_sim, rates.control_period())) {
    throw ScenarioError("rates: dt_sim must divide the control period");
  }
  if (!divides(rates.control_period(), rates.replan_period)) {
    throw ScenarioError("rates: control period must divide replan_period");
  }
  if (!divides(rates.control_period(), rates.model_update_period)) {
    throw ScenarioError("rates: control period must divide model_update_period");
  }
  if (!world.in_bounds(goal.center)) throw ScenarioError("goal center outside bounds");
  if (!(goal.tol_pos > 0.0) || !(goal.tol_vel > 0.0)) {
    throw ScenarioError("goal tolerances must be strictly positive");
  }
  if (!(gamma0 >= 0.0)) throw ScenarioError("gamma0 must be >= 0");
  if (!(tau > 0.0)) throw ScenarioError("tau must be > 0");
  if (!(max_sim_time > 0.0)) throw ScenarioError("max_sim_time must be > 0");
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario parse error: " + std::string(e.what()));
  }

  require_keys(root, "scenario",
               {"theta_true", "theta_init", "world", "x0", "goal", "rates", "gamma0",
                "tau", "noise", "seed", "max_sim_time", "flags"});

  ScenarioConfig cfg;
  cfg.theta_true = parse_params(root.at("theta_true"), "theta_true");

  {
    const json& ti = root.at("theta_init");
    require_keys(ti, "theta_init", {"m", "cx", "cy", "izz", "sigma0"});
    cfg.theta_init = {get_num(ti, "theta_init", "m"), get_num(ti, "theta_init", "cx"),
                      get_num(ti, "theta_init", "cy"), get_num(ti, "theta_init", "izz")};
    cfg.sigma_theta0 = get_array<Vec4>(ti, "theta_init", "sigma0");
  }

  {
    const json& w = root.at("world");
    require_keys(w, "world", {"bounds", "inflation", "obstacles"});
    const json& b = w.at("bounds");
    if (!b.is_array() || b.size() != 4) {
      throw ScenarioError("world.bounds must be [xmin, ymin, xmax, ymax]");
    }
    cfg.world.lo = {b[0].get<double>(), b[1].get<double>()};
    cfg.world.hi = {b[2].get<double>(), b[3].get<double>()};
    cfg.world.inflation = get_num(w, "world", "inflation");
    const json& obs = w.at("obstacles");
    if (!obs.is_array()) throw ScenarioError("world.obstacles must be an array");
    for (const json& o : obs) {
      require_keys(o, "world.obstacles[]", {"x", "y", "r"});
      cfg.world.obstacles.push_back(
          {Vec2{get_num(o, "obstacle", "x"), get_num(o, "obstacle", "y")},
           get_num(o, "obstacle", "r")});
    }
  }

  {
    const json& x = root.at("x0");
    require_keys(x, "x0", {"rx", "ry", "phi", "vx", "vy", "omega"});
    cfg.x0 = {get_num(x, "x0", "rx"), get_num(x, "x0", "ry"), get_num(x, "x0", "phi"),
              get_num(x, "x0", "vx"), get_num(x, "x0", "vy"), get_num(x, "x0", "omega")};
  }

  {
    const json& g = root.at("goal");
    require_keys(g, "goal", {"center", "tol_pos", "tol_vel"});
    cfg.goal.center = get_array<Vec2>(g, "goal", "center");
    cfg.goal.tol_pos = get_num(g, "goal", "tol_pos");
    cfg.goal.tol_vel = get_num(g, "goal", "tol_vel");
  }

  {
    const json& r = root.at("rates");
    require_keys(r, "rates", {"dt_sim", "control", "replan_period", "model_update_period"});
    cfg.rates.dt_sim = get_num(r, "rates", "dt_sim");
    cfg.rates.control_hz = get_num(r, "rates", "control");
    cfg.rates.replan_period = get_num(r, "rates", "replan_period");
    cfg.rates.model_update_period = get_num(r, "rates", "model_update_period");
  }

  cfg.gamma0 = get_num(root, "scenario", "gamma0");
  cfg.tau = get_num(root, "scenario", "tau");

  {
    const json& n = root.at("noise");
    require_keys(n, "noise", {"sigma_r", "sigma_q"});
    cfg.noise.sigma_r = get_array<Vec6>(n, "noise", "sigma_r");
    cfg.noise.sigma_q = get_array<Vec6>(n, "noise", "sigma_q");
  }

  {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned()) throw ScenarioError("seed must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.max_sim_time = get_num(root, "scenario", "max_sim_time");

  {
    const json& f = root.at("flags");
    require_keys(f, "flags", {"informative", "global_replan", "include_coriolis"});
    cfg.flags.informative = get_bool(f, "flags", "informative");
    cfg.flags.global_replan = get_bool(f, "flags", "global_replan");
    cfg.flags.include_coriolis = get_bool(f, "flags", "include_coriolis");
  }

  cfg.validate();
  return cfg;
}

}  // namespace ffplan
