#pragma once

#include <string>

namespace platoon {

enum class ProfileKind { Constant, CosineDip };

// Spatially varying reference velocity vref(s) with positive bounds
// v_min <= vref(s) <= v_max. Two families:
//
//   Constant:  vref(s) = v_const
//   CosineDip: vref(s) = v_base - depth * (1 - cos(2*pi*(s - s_begin)/L))
//              for s in [s_begin, s_end], L = s_end - s_begin,
//              and v_base outside. The dip bottoms out at v_base - 2*depth.
//
// The CosineDip joins its constant tails with matching value and slope
// (C^1); its curvature jumps at the junctions, which is fine for the
// third-order vehicle model used here. Immutable after construction.
struct ReferenceProfile {
  ProfileKind kind = ProfileKind::Constant;
  double v_const = 20.0;
  double v_base = 20.0;
  double depth = 2.0;
  double s_begin = 300.0;
  double s_end = 500.0;
  double v_min = 1.0;
  double v_max = 40.0;

  static ReferenceProfile constant(double v, double vmin = 1.0, double vmax = 40.0);
  static ReferenceProfile cosine_dip(double vb, double dv, double sa, double sb,
                                     double vmin = 1.0, double vmax = 40.0);

  // Checks v_min > 0 and that the profile stays inside [v_min, v_max]
  // (analytic: the dip extremum is v_base - 2*depth). Throws ConfigError.
  void validate() const;
};

// vref and its first two space derivatives.
struct VrefDerivs {
  double v;    // vref(s)            [m/s]
  double dv;   // d vref / ds        [1/s]
  double ddv;  // d^2 vref / ds^2    [1/(m s)]
};

// 1/vref and its first two space derivatives; these enter the spatial-domain
// tracking errors and the controller feedforward.
struct InvVrefDerivs {
  double w0;  // 1/vref              [s/m]
  double w1;  // d/ds (1/vref)       [s/m^2]
  double w2;  // d^2/ds^2 (1/vref)   [s/m^3]
};

// Piecewise profiles have a curvature jump at the piece junctions. The
// optional piece_hint selects which piece's closed form to evaluate: the
// piece containing piece_hint is used, evaluated at s. Integrators pass the
// midpoint of the current step so that no step ever straddles a derivative
// discontinuity (grids are expected to align with the junctions).
double eval_vref(const ReferenceProfile& p, double s);
double eval_vref(const ReferenceProfile& p, double s, double piece_hint);

VrefDerivs eval_vref_derivs(const ReferenceProfile& p, double s);
VrefDerivs eval_vref_derivs(const ReferenceProfile& p, double s, double piece_hint);

InvVrefDerivs eval_inv_vref_derivs(const ReferenceProfile& p, double s);
InvVrefDerivs eval_inv_vref_derivs(const ReferenceProfile& p, double s, double piece_hint);

// Nominal traversal time T_ref(s) = integral of 1/vref from s_start to s,
// computed with the same fixed-step RK4 scheme the simulator uses (the
// simulator carries this integral as an extra ODE state, the reference
// clock). Strictly increasing in s.
double eval_tref(const ReferenceProfile& p, double s_start, double s, double step = 0.1);

// Acceleration a vehicle needs to hold vref exactly: a = vref * dvref/ds.
double equilibrium_accel(const ReferenceProfile& p, double s);

std::string to_string(ProfileKind k);

}  // namespace platoon
