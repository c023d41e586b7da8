#pragma once

#include <string>

#include "platoon/config.hpp"
#include "platoon/stability_analysis.hpp"
#include "platoon/trajectory.hpp"

namespace platoon {

// One row per grid point per vehicle, 12 significant digits.
inline constexpr const char* kTrajectoryCsvHeader =
    "s_or_t,vehicle,t,s,v,a,u,w,Delta,Delta0,delta1,delta2,e1,e2,y";

void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);

inline constexpr const char* kSweepCsvHeader =
    "N,kappa0,sup_e1_inf,sup_Delta_inf,verdict";

void write_sweep_csv(const DssReport& report, const std::string& path);

// Run manifest: config echo, seed, toolkit version, wall time.
void write_run_manifest(const ScenarioConfig& cfg, const std::string& command,
                        double wall_seconds, const std::string& path);

}  // namespace platoon
