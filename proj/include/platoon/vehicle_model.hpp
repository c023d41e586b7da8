#pragma once

#include <vector>

namespace platoon {

// Third-order longitudinal dynamics: position/velocity kinematics plus a
// first-order actuator lag with time constant tau,
//
//   ds/dt = v,   dv/dt = a + w,   tau * da/dt = -a + u,
//
// where u is the commanded acceleration and w an external disturbance.
struct VehicleParams {
  double tau = 1.0;  // actuator time constant [s]
};

// Time-domain state.
struct VehicleStateTime {
  double s = 0.0;  // position [m]
  double v = 0.0;  // velocity [m/s]
  double a = 0.0;  // acceleration [m/s^2]
};

// Spatial-domain state: the independent variable is road position s and the
// state carries the passage time t(s). Well-defined only for v > 0.
struct VehicleStateSpace {
  double t = 0.0;  // passage time [s]
  double v = 0.0;  // velocity [m/s]
  double a = 0.0;  // acceleration [m/s^2]
};

// Below this velocity the spatial description is considered broken and
// spatial-domain evaluation aborts instead of dividing by a vanishing v.
inline constexpr double kVelocityFloor = 0.1;  // [m/s]

// d/dt of (s, v, a).
VehicleStateTime time_rhs(const VehicleStateTime& x, double u, double w,
                          const VehicleParams& p);

// d/ds of (t, v, a): the time-domain field divided by v (dt/ds = 1/v).
// Throws NonPositiveVelocity (vehicle index unknown here, reported as -1)
// if x.v <= kVelocityFloor.
VehicleStateSpace space_rhs(const VehicleStateSpace& x, double u, double w,
                            const VehicleParams& p);

// Stacked platoon state at one road position: the integrated reference
// clock T_ref(s) plus (t_i, v_i, a_i) for vehicles i = 0..N (0 = lead).
struct PlatoonState {
  double tref = 0.0;
  std::vector<VehicleStateSpace> vehicles;
};

// Stacked platoon state at one time instant: the nominal-trajectory position
// s_nom(t) (d s_nom/dt = vref(s_nom)) plus (s_i, v_i, a_i) per vehicle.
struct TemporalPlatoonState {
  double s_nom = 0.0;
  std::vector<VehicleStateTime> vehicles;
};

}  // namespace platoon
