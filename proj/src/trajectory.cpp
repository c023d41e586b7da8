#include "platoon/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "platoon/errors.hpp"
#include "platoon/interp.hpp"

namespace platoon {

std::string to_string(Domain d) {
  return d == Domain::Spatial ? "spatial" : "temporal";
}

void VehicleSeries::resize(Eigen::Index n) {
  for (Eigen::VectorXd* c : {&t, &s, &v, &a, &u, &w, &Delta, &Delta0, &delta1,
                             &delta2, &e1, &e2, &y}) {
    c->setZero(n);
  }
}

namespace {

void require_strictly_increasing(const Eigen::VectorXd& x, const char* what,
                                 bool temporal_axis) {
  for (Eigen::Index k = 0; k + 1 < x.size(); ++k) {
    if (!(x[k + 1] > x[k])) {
      if (temporal_axis) throw NonMonotoneTime(what);
      throw NonMonotonePosition(what);
    }
  }
}

// Resample every channel of one vehicle against a new independent axis.
VehicleSeries resample_vehicle(const VehicleSeries& in, const Eigen::VectorXd& axis,
                               const Eigen::VectorXd& new_grid) {
  VehicleSeries out;
  out.resize(new_grid.size());
  const Eigen::VectorXd* channels_in[] = {&in.t, &in.s, &in.v, &in.a, &in.u,
                                          &in.w, &in.Delta, &in.Delta0, &in.delta1,
                                          &in.delta2, &in.e1, &in.e2, &in.y};
  Eigen::VectorXd* channels_out[] = {&out.t, &out.s, &out.v, &out.a, &out.u,
                                     &out.w, &out.Delta, &out.Delta0, &out.delta1,
                                     &out.delta2, &out.e1, &out.e2, &out.y};
  for (int c = 0; c < 13; ++c) {
    MonotoneCubic interp(axis, *channels_in[c]);
    for (Eigen::Index k = 0; k < new_grid.size(); ++k) {
      (*channels_out[c])[k] = interp(new_grid[k]);
    }
  }
  return out;
}

Eigen::VectorXd common_grid(double lo, double hi, double step) {
  // Grid nodes are integer multiples of step inside the common range, so two
  // resamplings of the same data land on identical abscissae.
  const Eigen::Index k0 = static_cast<Eigen::Index>(std::ceil(lo / step - 1e-9));
  const Eigen::Index k1 = static_cast<Eigen::Index>(std::floor(hi / step + 1e-9));
  if (k1 < k0) {
    throw NonMonotonePosition("resampling: empty common range");
  }
  Eigen::VectorXd g(k1 - k0 + 1);
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    g[k] = static_cast<double>(k0 + k) * step;
  }
  return g;
}

}  // namespace

Trajectory time_to_space_traj(const Trajectory& traj_t, double s_step) {
  double lo = -1e300, hi = 1e300;
  for (const auto& veh : traj_t.vehicles) {
    require_strictly_increasing(veh.s, "position history", false);
    lo = std::max(lo, veh.s[0]);
    hi = std::min(hi, veh.s[veh.s.size() - 1]);
  }
  Trajectory out;
  out.domain = Domain::Spatial;
  out.grid = common_grid(lo, hi, s_step);
  out.vehicles.reserve(traj_t.vehicles.size());
  for (const auto& veh : traj_t.vehicles) {
    VehicleSeries rs = resample_vehicle(veh, veh.s, out.grid);
    rs.s = out.grid;  // exact axis, not interpolated
    out.vehicles.push_back(std::move(rs));
  }
  return out;
}

Trajectory space_to_time_traj(const Trajectory& traj_s, double t_step) {
  double lo = -1e300, hi = 1e300;
  for (const auto& veh : traj_s.vehicles) {
    require_strictly_increasing(veh.t, "passage-time history", true);
    lo = std::max(lo, veh.t[0]);
    hi = std::min(hi, veh.t[veh.t.size() - 1]);
  }
  Trajectory out;
  out.domain = Domain::Temporal;
  out.grid = common_grid(lo, hi, t_step);
  out.vehicles.reserve(traj_s.vehicles.size());
  for (const auto& veh : traj_s.vehicles) {
    VehicleSeries rs = resample_vehicle(veh, veh.t, out.grid);
    rs.t = out.grid;
    out.vehicles.push_back(std::move(rs));
  }
  return out;
}

}  // namespace platoon
