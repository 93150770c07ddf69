// Command-line front end: global planning, closed-loop runs, Monte Carlo
// studies and the informative-vs-nominal covariance comparison.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ffplan/harness.hpp"

namespace fs = std::filesystem;

namespace {

struct CliError : std::runtime_error {
  CliError(const std::string& name, const std::string& message)
      : std::runtime_error(message), error_name(name) {}
  std::string error_name;
};

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError("OutputError", "cannot write " + path.string());
  out << contents;
}

ffplan::ScenarioConfig load(const std::string& scenario, std::uint64_t seed,
                            bool seed_set) {
  ffplan::ScenarioConfig cfg = ffplan::load_scenario(scenario);
  if (seed_set) cfg.seed = seed;
  return cfg;
}

int run_command(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const CliError& e) {
    std::cerr << "{\"error\":\"" << e.error_name << "\",\"message\":\"" << e.what()
              << "\"}\n";
  } catch (const ffplan::GlobalPlanFailed& e) {
    std::cerr << "{\"error\":\"GlobalPlanFailed\",\"message\":\"" << e.what() << "\"}\n";
  } catch (const ffplan::ScenarioError& e) {
    std::cerr << "{\"error\":\"ScenarioError\",\"message\":\"" << e.what() << "\"}\n";
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"RuntimeError\",\"message\":\"" << e.what() << "\"}\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-aware motion planning and parameter learning "
               "for a planar free-flyer"};
  app.require_subcommand(1);

  std::string scenario, out_dir;
  std::uint64_t seed = 0;
  int runs = 10;
  bool no_info = false;

  auto add_common = [&](CLI::App* cmd, bool with_seed, bool with_runs) {
    cmd->add_option("--scenario", scenario, "scenario JSON file")->required();
    cmd->add_option("--out", out_dir, "output directory")->required();
    if (with_seed) cmd->add_option("--seed", seed, "override the scenario seed");
    if (with_runs) cmd->add_option("--runs", runs, "number of runs")->required();
  };

  CLI::App* plan_cmd = app.add_subcommand("plan-global", "run the global planner only");
  add_common(plan_cmd, true, false);
  CLI::App* run_cmd = app.add_subcommand("run", "run the closed-loop scenario");
  add_common(run_cmd, true, false);
  run_cmd->add_flag("--no-info", no_info, "force gamma = 0 (non-informative)");
  CLI::App* mc_cmd = app.add_subcommand("montecarlo", "seeded Monte Carlo study");
  add_common(mc_cmd, false, true);
  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "matched-seed informative vs nominal comparison");
  add_common(cmp_cmd, false, true);

  CLI11_PARSE(app, argc, argv);

  return run_command([&] {
    fs::create_directories(out_dir);
    if (plan_cmd->parsed()) {
      const auto cfg = load(scenario, seed, plan_cmd->count("--seed") > 0);
      ffplan::GlobalPlan plan;
      try {
        plan = ffplan::plan_global(cfg.x0.position(), cfg.x0.velocity_world(), cfg.goal,
                                   cfg.world, cfg.theta_init, ffplan::RrtParams{},
                                   cfg.seed * 6364136223846793005ULL +
                                       3ULL * 1442695040888963407ULL + 1ULL);
      } catch (const std::exception& e) {
        throw ffplan::GlobalPlanFailed(e.what());
      }
      std::ostringstream csv;
      ffplan::write_global_plan_csv(csv, plan);
      write_file(fs::path(out_dir) / "global_plan.csv", csv.str());
    } else if (run_cmd->parsed()) {
      auto cfg = load(scenario, seed, run_cmd->count("--seed") > 0);
      if (no_info) cfg.flags.informative = false;
      const ffplan::RunResult res = ffplan::run_scenario(cfg);
      std::ostringstream csv;
      ffplan::write_trace_csv(csv, res.trace);
      write_file(fs::path(out_dir) / "trace.csv", csv.str());
      const auto est = ffplan::param_estimate(res.final_belief);
      std::ostringstream js;
      js << "{\n  \"reached_goal\": " << (res.reached_goal ? "true" : "false")
         << ",\n  \"timed_out\": " << (res.timed_out ? "true" : "false")
         << ",\n  \"duration\": " << res.duration << ",\n  \"replans\": " << res.replans
         << ",\n  \"model_updates\": " << res.model_updates
         << ",\n  \"model_swaps\": " << res.model_swaps << ",\n  \"m_hat\": "
         << est.theta.m << ",\n  \"izz_hat\": " << est.theta.izz << "\n}\n";
      write_file(fs::path(out_dir) / "result.json", js.str());
      if (res.timed_out) throw CliError("Timeout", "goal not reached in max_sim_time");
    } else if (mc_cmd->parsed()) {
      const auto cfg = load(scenario, 0, false);
      const auto summary = ffplan::monte_carlo(cfg, runs);
      write_file(fs::path(out_dir) / "montecarlo.json", ffplan::monte_carlo_json(summary));
    } else if (cmp_cmd->parsed()) {
      const auto cfg = load(scenario, 0, false);
      const auto result = ffplan::compare_informative(cfg, runs);
      write_file(fs::path(out_dir) / "compare.json", ffplan::compare_json(result));
    }
  });
}
