#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "platoon/config.hpp"
#include "platoon/csv_io.hpp"
#include "platoon/errors.hpp"
#include "platoon/sim_engine.hpp"
#include "test_helpers.hpp"

using namespace platoon;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("platoon_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PLATOON_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("missing keys fall back to the documented defaults") {
  const ScenarioConfig cfg = parse_config("", "inline");
  CHECK(cfg.model.tau == 1.0);
  CHECK(cfg.policy.dt == 1.0);
  CHECK(cfg.policy.kappa == 2.0);
  CHECK(cfg.policy.kappa0 == 0.1);
  CHECK(cfg.controller.omega0 == 0.05);
  CHECK(cfg.controller.zeta0 == 0.9);
  CHECK(cfg.n_followers == 5);
  CHECK(cfg.domain == Domain::Spatial);
  CHECK(cfg.grid.step == 0.1);
}

TEST_CASE("full config parse") {
  const std::string text = R"(# scenario
[platoon]
n_followers = 8
dt = 0.8

[policy]
type = delay_based
kappa = 1.5
kappa0 = 0.05

[model]
tau = 0.6

[controller]
omega0 = 0.04
zeta0 = 0.8

[reference]
type = cosine_dip
v_base = 22.0
depth = 1.5
s_begin = 200.0
s_end = 450.0

[disturbance]
type = sine_of_s
amplitude = 0.5
spatial_freq = 0.02
applies_to = followers

[sim]
domain = spatial
s_start = 10.0
s_end = 900.0
step = 0.05
seed = 77
ic_spread_timing = 0.2
ic_spread_velocity = 0.4
ic_spread_accel = 0.1

[sweep]
n_list = 5,10
kappa0_list = 0,0.2
)";
  const ScenarioConfig cfg = parse_config(text, "inline");
  CHECK(cfg.n_followers == 8);
  CHECK(cfg.policy.dt == 0.8);
  CHECK(cfg.policy.kappa == 1.5);
  CHECK(cfg.model.tau == 0.6);
  CHECK(cfg.profile.kind == ProfileKind::CosineDip);
  CHECK(cfg.profile.depth == 1.5);
  CHECK(cfg.disturbance.kind == DisturbanceKind::SineOfS);
  CHECK(cfg.disturbance.applies_to == DisturbanceTarget::FollowersOnly);
  CHECK(cfg.grid.start == 10.0);
  CHECK(cfg.grid.step == 0.05);
  CHECK(cfg.seed == 77);
  CHECK(cfg.ic_spread.velocity == 0.4);
  CHECK(cfg.sweep.n_list == std::vector<int>{5, 10});
}

TEST_CASE("unknown keys and malformed lines are rejected with a diagnostic") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_config(text, "cfg.ini");
      FAIL("expected ConfigError for: ", text);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("[platoon]\nn_vehicles = 5\n", "cfg.ini:2");
  expect_error("[platooning]\n", "unknown section");
  expect_error("[platoon]\nn_followers 5\n", "expected key = value");
  expect_error("n_followers = 5\n", "outside any section");
  expect_error("[model]\ntau = fast\n", "expects a number");
  expect_error("[sim]\ndomain = spatial\nt_end = 50\n", "does not match");
  expect_error("[policy]\nkappa0 = 1.5\n", "kappa0");
}

TEST_CASE("config echo round-trips exactly") {
  ScenarioConfig cfg = platoon::testing::dip_scenario();
  cfg.grid.step = 0.1;
  cfg.seed = 31;
  cfg.disturbance.kind = DisturbanceKind::PerVehicleTable;
  cfg.disturbance.table = {{2, -0.25, 0.013, 0.5}};
  const ScenarioConfig back = parse_config(serialize_config(cfg), "echo");
  CHECK(back.n_followers == cfg.n_followers);
  CHECK(back.policy.dt == cfg.policy.dt);
  CHECK(back.policy.kappa == cfg.policy.kappa);
  CHECK(back.policy.kappa0 == cfg.policy.kappa0);
  CHECK(back.profile.kind == cfg.profile.kind);
  CHECK(back.profile.s_begin == cfg.profile.s_begin);
  CHECK(back.grid.start == cfg.grid.start);
  CHECK(back.grid.end == cfg.grid.end);
  CHECK(back.grid.step == cfg.grid.step);
  CHECK(back.seed == cfg.seed);
  CHECK(back.ic_spread.timing == cfg.ic_spread.timing);
  REQUIRE(back.disturbance.table.size() == 1);
  CHECK(back.disturbance.table[0].vehicle == 2);
  CHECK(back.disturbance.table[0].amplitude == -0.25);
  CHECK(back.disturbance.table[0].freq == 0.013);
  CHECK(back.disturbance.table[0].phase == 0.5);
}

TEST_CASE("trajectory CSV round trip at emitted precision") {
  ScenarioConfig cfg = platoon::testing::dip_scenario();
  cfg.n_followers = 2;
  cfg.grid.end = 50.0;
  const Trajectory traj = run_spatial(cfg);

  const fs::path dir = fresh_dir("csv");
  const std::string path = (dir / "trajectory.csv").string();
  write_trajectory_csv(traj, path);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == kTrajectoryCsvHeader);

  const Trajectory back = read_trajectory_csv(path);
  REQUIRE(back.num_vehicles() == traj.num_vehicles());
  REQUIRE(back.size() == traj.size());
  CHECK(back.domain == Domain::Spatial);
  auto near = [](double a, double b) {
    return std::abs(a - b) <= 5e-12 * std::max(1.0, std::abs(b));
  };
  for (int i = 0; i < traj.num_vehicles(); ++i) {
    const auto& va = traj.vehicles[static_cast<std::size_t>(i)];
    const auto& vb = back.vehicles[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < traj.size(); ++k) {
      CHECK(near(vb.t[k], va.t[k]));
      CHECK(near(vb.v[k], va.v[k]));
      CHECK(near(vb.u[k], va.u[k]));
      CHECK(near(vb.Delta[k], va.Delta[k]));
      CHECK(near(vb.y[k], va.y[k]));
    }
  }
}

TEST_CASE("sweep CSV schema") {
  DssReport rep;
  rep.n_list = {3, 5};
  rep.kappa0_list = {0.0, 0.1};
  rep.cells.resize(4);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t ni = 0; ni < 2; ++ni) {
      DssCell& c = rep.cells[j * 2 + ni];
      c.n = rep.n_list[ni];
      c.kappa0 = rep.kappa0_list[j];
      c.sup_e1_inf = 0.01 * static_cast<double>(j + 1);
      c.sup_delta_inf = 0.1;
      c.ok = true;
    }
  }
  const fs::path dir = fresh_dir("sweepcsv");
  write_sweep_csv(rep, (dir / "sweep.csv").string());
  std::ifstream in(dir / "sweep.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == kSweepCsvHeader);
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("manifest echo replays to a byte-identical trajectory") {
  ScenarioConfig cfg = platoon::testing::dip_scenario();
  cfg.n_followers = 2;
  cfg.grid.end = 80.0;
  const fs::path dir = fresh_dir("manifest");
  write_trajectory_csv(run_spatial(cfg), (dir / "a.csv").string());
  write_run_manifest(cfg, "simulate", 0.0, (dir / "meta.json").string());

  std::ifstream meta_in(dir / "meta.json");
  nlohmann::json meta;
  meta_in >> meta;
  CHECK(meta["toolkit"] == kToolkitName);
  CHECK(meta["seed"] == cfg.seed);

  const ScenarioConfig replay =
      parse_config(meta["config_ini"].get<std::string>(), "manifest");
  write_trajectory_csv(run_spatial(replay), (dir / "b.csv").string());
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(!slurp(dir / "a.csv").empty());
}

TEST_CASE("command line surface") {
  const fs::path dir = fresh_dir("cli");

  // Corrupt config: parse failure is exit 1.
  {
    std::ofstream out(dir / "bad.ini");
    out << "[platoon]\nn_followers = many\n";
  }
  CHECK(run_cli("simulate --config " + (dir / "bad.ini").string() + " --out " +
                (dir / "o1").string()) == 1);

  // A crushing constant deceleration on one follower drives it to the
  // velocity floor: simulation abort is exit 2.
  {
    std::ofstream out(dir / "floor.ini");
    out << "[platoon]\nn_followers = 2\n"
        << "[reference]\ntype = constant\nv_const = 20.0\n"
        << "[disturbance]\ntype = per_vehicle_table\n"
        << "table = 2:-400.0:0.0:1.5707963267948966\n"
        << "[sim]\ndomain = spatial\ns_start = 0\ns_end = 50\nstep = 0.1\n";
  }
  CHECK(run_cli("simulate --config " + (dir / "floor.ini").string() + " --out " +
                (dir / "o2").string()) == 2);

  // Healthy run: exit 0 and the expected artifacts.
  {
    std::ofstream out(dir / "ok.ini");
    out << "[platoon]\nn_followers = 2\n"
        << "[reference]\ntype = constant\nv_const = 20.0\n"
        << "[sim]\ndomain = spatial\ns_start = 0\ns_end = 20\nstep = 0.1\n";
  }
  CHECK(run_cli("simulate --config " + (dir / "ok.ini").string() + " --out " +
                (dir / "o3").string()) == 0);
  CHECK(fs::exists(dir / "o3" / "trajectory.csv"));
  CHECK(fs::exists(dir / "o3" / "meta.json"));

  // Built-in oracle suite.
  CHECK(run_cli("validate") == 0);
  CHECK(run_cli("validate --step-scale 100") == 3);
  CHECK(run_cli("validate --kappa0 0.999") == 0);
}

TEST_CASE("compare and sweep commands produce their artifacts") {
  const fs::path dir = fresh_dir("cli2");
  {
    std::ofstream out(dir / "small.ini");
    out << "[platoon]\nn_followers = 2\n"
        << "[reference]\ntype = constant\nv_const = 20.0\n"
        << "[sim]\ndomain = spatial\ns_start = 0\ns_end = 200\nstep = 0.1\n"
        << "seed = 5\nic_spread_timing = 0.1\nic_spread_velocity = 0.2\n"
        << "[sweep]\nn_list = 2,3\nkappa0_list = 0,0.1\n";
  }
  CHECK(run_cli("compare --config " + (dir / "small.ini").string() + " --out " +
                (dir / "cmp").string()) == 0);
  CHECK(fs::exists(dir / "cmp" / "delay_based" / "trajectory.csv"));
  CHECK(fs::exists(dir / "cmp" / "headway" / "trajectory.csv"));
  CHECK(fs::exists(dir / "cmp" / "compare_summary.txt"));
  // Identical schemas in both outputs.
  auto header_of = [](const fs::path& p) {
    std::ifstream in(p);
    std::string h;
    std::getline(in, h);
    return h;
  };
  CHECK(header_of(dir / "cmp" / "delay_based" / "trajectory.csv") ==
        kTrajectoryCsvHeader);
  CHECK(header_of(dir / "cmp" / "headway" / "trajectory.csv") ==
        kTrajectoryCsvHeader);

  CHECK(run_cli("sweep --config " + (dir / "small.ini").string() + " --out " +
                (dir / "swp").string()) == 0);
  CHECK(header_of(dir / "swp" / "sweep.csv") == kSweepCsvHeader);
  CHECK(fs::exists(dir / "swp" / "summary.txt"));

  // Step/seed overrides are honored and echoed into the manifest.
  CHECK(run_cli("simulate --config " + (dir / "small.ini").string() + " --out " +
                (dir / "ovr").string() + " --seed 99 --step 0.2") == 0);
  std::ifstream meta_in(dir / "ovr" / "meta.json");
  nlohmann::json meta;
  meta_in >> meta;
  CHECK(meta["seed"] == 99);
  const ScenarioConfig echoed =
      parse_config(meta["config_ini"].get<std::string>(), "ovr");
  CHECK(echoed.seed == 99);
  CHECK(echoed.grid.step == 0.2);
}

TEST_CASE("reader rejects foreign files") {
  const fs::path dir = fresh_dir("badcsv");
  {
    std::ofstream out(dir / "x.csv");
    out << "a,b,c\n1,2,3\n";
  }
  CHECK_THROWS(read_trajectory_csv((dir / "x.csv").string()));
  CHECK_THROWS(read_trajectory_csv((dir / "missing.csv").string()));
}
