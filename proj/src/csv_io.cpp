#include "platoon/csv_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "platoon/errors.hpp"

namespace platoon {

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << kTrajectoryCsvHeader << "\n";
  for (Eigen::Index k = 0; k < traj.size(); ++k) {
    for (int i = 0; i < traj.num_vehicles(); ++i) {
      const VehicleSeries& veh = traj.vehicles[static_cast<std::size_t>(i)];
      out << fmt12(traj.grid[k]) << ',' << i << ',' << fmt12(veh.t[k]) << ','
          << fmt12(veh.s[k]) << ',' << fmt12(veh.v[k]) << ',' << fmt12(veh.a[k])
          << ',' << fmt12(veh.u[k]) << ',' << fmt12(veh.w[k]) << ','
          << fmt12(veh.Delta[k]) << ',' << fmt12(veh.Delta0[k]) << ','
          << fmt12(veh.delta1[k]) << ',' << fmt12(veh.delta2[k]) << ','
          << fmt12(veh.e1[k]) << ',' << fmt12(veh.e2[k]) << ',' << fmt12(veh.y[k])
          << "\n";
    }
  }
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryCsvHeader) {
    throw std::runtime_error("'" + path + "' is not a trajectory CSV");
  }

  std::vector<double> grid;
  std::vector<std::vector<std::array<double, 13>>> rows;  // [vehicle][point]
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::array<double, 15> vals{};
    for (int c = 0; c < 15; ++c) {
      if (!std::getline(ls, field, ',')) {
        throw std::runtime_error("'" + path + "': short row");
      }
      vals[static_cast<std::size_t>(c)] = std::stod(field);
    }
    const int vehicle = static_cast<int>(vals[1]);
    if (vehicle == 0) grid.push_back(vals[0]);
    if (vehicle >= static_cast<int>(rows.size())) {
      rows.resize(static_cast<std::size_t>(vehicle) + 1);
    }
    std::array<double, 13> r;
    for (int c = 0; c < 13; ++c) r[static_cast<std::size_t>(c)] = vals[static_cast<std::size_t>(c) + 2];
    rows[static_cast<std::size_t>(vehicle)].push_back(r);
  }

  Trajectory traj;
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  traj.grid = Eigen::Map<const Eigen::VectorXd>(grid.data(), n);
  // The independent axis only distinguishes the domains for consumers of the
  // in-memory object; infer it from whether s tracks the grid.
  traj.vehicles.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    VehicleSeries& veh = traj.vehicles[i];
    veh.resize(n);
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      throw std::runtime_error("'" + path + "': ragged vehicle series");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& r = rows[i][static_cast<std::size_t>(k)];
      veh.t[k] = r[0];
      veh.s[k] = r[1];
      veh.v[k] = r[2];
      veh.a[k] = r[3];
      veh.u[k] = r[4];
      veh.w[k] = r[5];
      veh.Delta[k] = r[6];
      veh.Delta0[k] = r[7];
      veh.delta1[k] = r[8];
      veh.delta2[k] = r[9];
      veh.e1[k] = r[10];
      veh.e2[k] = r[11];
      veh.y[k] = r[12];
    }
  }
  // Spatial runs carry the grid in every vehicle's s column.
  bool spatial = !traj.vehicles.empty();
  for (const auto& veh : traj.vehicles) {
    spatial = spatial && veh.s == traj.grid;
  }
  traj.domain = spatial ? Domain::Spatial : Domain::Temporal;
  return traj;
}

void write_sweep_csv(const DssReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << kSweepCsvHeader << "\n";
  for (std::size_t j = 0; j < report.kappa0_list.size(); ++j) {
    const bool sat = report.saturated(static_cast<int>(j));
    for (std::size_t ni = 0; ni < report.n_list.size(); ++ni) {
      const DssCell& c = report.cell(static_cast<int>(ni), static_cast<int>(j));
      out << c.n << ',' << fmt12(c.kappa0) << ',' << fmt12(c.sup_e1_inf) << ','
          << fmt12(c.sup_delta_inf) << ','
          << (c.ok ? (sat ? "PASS" : "GROW") : "ERROR") << "\n";
    }
  }
}

void write_run_manifest(const ScenarioConfig& cfg, const std::string& command,
                        double wall_seconds, const std::string& path) {
  nlohmann::json meta;
  meta["toolkit"] = kToolkitName;
  meta["version"] = kToolkitVersion;
  meta["command"] = command;
  meta["seed"] = cfg.seed;
  meta["wall_time_seconds"] = wall_seconds;
  meta["config_ini"] = serialize_config(cfg);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << meta.dump(2) << "\n";
}

}  // namespace platoon
