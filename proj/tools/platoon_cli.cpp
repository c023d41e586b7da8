// Command-line front end: scenario simulation, policy comparison, string
// stability sweeps and the built-in validation suite. See README for the
// config grammar and output formats.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "platoon/config.hpp"
#include "platoon/csv_io.hpp"
#include "platoon/errors.hpp"
#include "platoon/sim_engine.hpp"
#include "platoon/stability_analysis.hpp"
#include "platoon/validate.hpp"

namespace fs = std::filesystem;
using namespace platoon;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<double> step_override;
  std::optional<std::uint64_t> seed_override;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "scenario config file")->required();
  cmd->add_option("--out", args.out_dir, "output directory")->required();
  cmd->add_option("--step", args.step_override, "override integration step");
  cmd->add_option("--seed", args.seed_override, "override RNG seed");
}

ScenarioConfig load_with_overrides(const CommonArgs& args) {
  ScenarioConfig cfg = load_config(args.config_path);
  if (args.step_override) cfg.grid.step = *args.step_override;
  if (args.seed_override) cfg.seed = *args.seed_override;
  cfg.validate();
  return cfg;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_run(const ScenarioConfig& cfg, const Trajectory& traj,
               const std::string& command, double wall, const fs::path& dir) {
  fs::create_directories(dir);
  write_trajectory_csv(traj, (dir / "trajectory.csv").string());
  write_run_manifest(cfg, command, wall, (dir / "meta.json").string());
}

int cmd_simulate(const CommonArgs& args) {
  const ScenarioConfig cfg = load_with_overrides(args);
  const auto t0 = std::chrono::steady_clock::now();
  const Trajectory traj =
      cfg.domain == Domain::Spatial ? run_spatial(cfg) : run_temporal(cfg);
  write_run(cfg, traj, "simulate", seconds_since(t0), args.out_dir);
  std::cout << "wrote " << (fs::path(args.out_dir) / "trajectory.csv").string()
            << " (" << traj.num_vehicles() << " vehicles, " << traj.size()
            << " grid points)\n";
  return 0;
}

int cmd_compare(const CommonArgs& args) {
  ScenarioConfig spatial_cfg = load_with_overrides(args);
  if (spatial_cfg.domain != Domain::Spatial ||
      spatial_cfg.policy.kind != PolicyKind::DelayBased) {
    throw ConfigError("compare expects a spatial delay-based scenario");
  }
  const ScenarioConfig headway_cfg = derive_headway_config(spatial_cfg);

  auto t0 = std::chrono::steady_clock::now();
  const Trajectory delay_traj = run_spatial(spatial_cfg);
  write_run(spatial_cfg, delay_traj, "compare", seconds_since(t0),
            fs::path(args.out_dir) / "delay_based");

  t0 = std::chrono::steady_clock::now();
  const Trajectory headway_traj = run_temporal(headway_cfg);
  write_run(headway_cfg, headway_traj, "compare", seconds_since(t0),
            fs::path(args.out_dir) / "headway");

  // Equivalence check on the tail of the covered range for both runs, the
  // headway run resampled onto the road grid first.
  const double s0 = spatial_cfg.grid.start, s1 = spatial_cfg.grid.end;
  const double tail_lo = s0 + 0.6 * (s1 - s0);
  const Trajectory headway_s = time_to_space_traj(headway_traj, spatial_cfg.grid.step);
  const Prop1Report rep_delay =
      check_prop1(delay_traj, spatial_cfg.policy.dt, 1e-3, tail_lo, s1);
  const Prop1Report rep_headway =
      check_prop1(headway_s, spatial_cfg.policy.dt, 1e-3, tail_lo,
                  std::min(s1, headway_s.grid[headway_s.size() - 1]));

  std::ostringstream summary;
  summary << "delay_based: timing_ok=" << rep_delay.timing_within_tol()
          << " velocity_ok=" << rep_delay.velocity_coincide()
          << " pass=" << rep_delay.pass() << "\n"
          << "headway:     timing_ok=" << rep_headway.timing_within_tol()
          << " velocity_ok=" << rep_headway.velocity_coincide()
          << " pass=" << rep_headway.pass() << "\n";
  std::cout << summary.str();
  std::ofstream sum_out(fs::path(args.out_dir) / "compare_summary.txt");
  sum_out << summary.str();
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const ScenarioConfig cfg = load_with_overrides(args);
  const auto t0 = std::chrono::steady_clock::now();
  const DssReport report = dss_sweep(cfg, cfg.sweep.n_list, cfg.sweep.kappa0_list);
  fs::create_directories(args.out_dir);
  write_sweep_csv(report, (fs::path(args.out_dir) / "sweep.csv").string());
  write_run_manifest(cfg, "sweep", seconds_since(t0),
                     (fs::path(args.out_dir) / "meta.json").string());
  std::ofstream sum_out(fs::path(args.out_dir) / "summary.txt");
  sum_out << report.summary();
  std::cout << report.summary();
  for (const auto& cell : report.cells) {
    if (!cell.ok) {
      std::cerr << "sweep cell N=" << cell.n << " kappa0=" << cell.kappa0
                << " failed: " << cell.error << "\n";
      return 2;
    }
  }
  return 0;
}

int cmd_validate(double step_scale, double kappa0) {
  if (!(kappa0 >= 0.0 && kappa0 < 1.0)) {
    throw ConfigError("--kappa0 must lie in [0, 1)");
  }
  const auto results = run_validation_suite(step_scale, kappa0);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %-24s measured=%.6g tolerance=%.6g\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.tolerance);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vehicle platoon simulation toolkit"};
  app.require_subcommand(1);

  CommonArgs sim_args, cmp_args, sweep_args;
  double step_scale = 1.0, val_kappa0 = 0.1;

  CLI::App* sim = app.add_subcommand("simulate", "run one scenario and emit CSV");
  add_common(sim, sim_args);
  CLI::App* cmp = app.add_subcommand(
      "compare", "delay-based vs constant-headway on the same scenario");
  add_common(cmp, cmp_args);
  CLI::App* swp = app.add_subcommand("sweep", "string stability sweep over (N, kappa0)");
  add_common(swp, sweep_args);
  CLI::App* val = app.add_subcommand("validate", "run the built-in oracle suite");
  val->add_option("--step-scale", step_scale)->group("");  // diagnostic hook
  val->add_option("--kappa0", val_kappa0)->group("");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (cmp->parsed()) return cmd_compare(cmp_args);
    if (swp->parsed()) return cmd_sweep(sweep_args);
    if (val->parsed()) return cmd_validate(step_scale, val_kappa0);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NonPositiveVelocity& e) {
    std::cerr << "simulation aborted: vehicle " << e.vehicle
              << " reached the velocity floor near " << e.where << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
