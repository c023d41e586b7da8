#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace platoon {

enum class Domain { Spatial, Temporal };

std::string to_string(Domain d);

// Dense per-vehicle record over the integration grid. For spatial runs the
// grid is road position and t carries the passage times; for temporal runs
// the grid is time and s carries the positions. Error channels hold whatever
// error coordinates the producing run computed (spatial or temporal flavor).
struct VehicleSeries {
  Eigen::VectorXd t, s, v, a, u, w;
  Eigen::VectorXd Delta, Delta0, delta1, delta2, e1, e2, y;

  void resize(Eigen::Index n);
};

struct Trajectory {
  Domain domain = Domain::Spatial;
  Eigen::VectorXd grid;
  std::vector<VehicleSeries> vehicles;

  Eigen::Index size() const { return grid.size(); }
  int num_vehicles() const { return static_cast<int>(vehicles.size()); }
};

// Resamples a temporal trajectory onto a uniform s-grid (step s_step) by
// shape-preserving monotone cubic interpolation of every channel against
// the recorded positions. The grid spans the s-range covered by all
// vehicles. Throws NonMonotonePosition if any vehicle's position series is
// not strictly increasing.
Trajectory time_to_space_traj(const Trajectory& traj_t, double s_step);

// Inverse resampling: spatial trajectory onto a uniform t-grid.
// Throws NonMonotoneTime if a passage-time series is not strictly increasing.
Trajectory space_to_time_traj(const Trajectory& traj_s, double t_step);

}  // namespace platoon
