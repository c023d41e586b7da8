#pragma once

#include <string>
#include <vector>

#include "platoon/reference_profile.hpp"
#include "platoon/trajectory.hpp"
#include "platoon/vehicle_model.hpp"

namespace platoon {

enum class PolicyKind { ConstantSpacing, ConstantHeadway, DelayBased };

std::string to_string(PolicyKind k);

// Spacing policy selection and the coupling weights of the time-gap error
// coordinates. kappa weighs the velocity tracking error into the spacing
// error; kappa0 weighs the lead-vehicle timing error (0 <= kappa0 < 1).
struct PolicyParams {
  PolicyKind kind = PolicyKind::DelayBased;
  double dt = 1.0;      // delay-based nominal time gap [s]
  double d = 20.0;      // spacing / headway standstill distance [m]
  double h = 0.1;       // headway time [s]
  double kappa = 2.0;   // velocity-error coupling weight
  double kappa0 = 0.1;  // lead-vehicle weight, in [0, 1)

  void validate() const;  // throws ConfigError on violated bounds
};

// Per-vehicle timing/spacing error coordinates at one grid point.
//
// Spatial (delay-based) flavor, all per road position s:
//   Delta   deviation of the passage-time gap from the nominal dt [s]
//           (lead: deviation from the reference clock)
//   Delta0  deviation from the nominal schedule T_ref + i*dt [s];
//           telescopes as Delta0_i = Delta0_{i-1} + Delta_i, Delta0_0 = Delta_0
//   e1, e2  velocity tracking error 1/v - 1/vref and its space derivative
//   delta1  (1-kappa0)*Delta + kappa0*Delta0 + kappa*e1
//   delta2  (1-kappa0)*(e1 - e1_pred) + kappa0*e1 + kappa*e2
//           (lead: delta1 = Delta + kappa*e1, delta2 = e1 + kappa*e2)
//   y       interconnection output -kappa0*Delta0 - kappa*e1
//           == (1-kappa0)*Delta - delta1
//
// The kappa0-weighted terms anchor every vehicle to the reference schedule
// (Delta0 against the reference clock, the delta2 term against the
// reference velocity, whose own tracking error is zero by definition).
// This anchoring makes delta1' = delta2 an identity for every vehicle,
// so the regulated manifold delta = 0 is exactly invariant.
//
// Temporal (headway) flavor mirrors this with Delta in meters,
// e1 = v - vref(s_i), e2 = a - vref'(s_i)*v, and the headway coupling
// weight in place of kappa.
struct TimingErrors {
  double Delta = 0.0;
  double Delta0 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double y = 0.0;
};

// Delay-based spacing errors in the spatial domain for the whole platoon.
// Requires params.kind == DelayBased and all velocities above the floor.
std::vector<TimingErrors> compute_errors_spatial(const PlatoonState& platoon,
                                                 const ReferenceProfile& profile,
                                                 const PolicyParams& params,
                                                 double s);
std::vector<TimingErrors> compute_errors_spatial(const PlatoonState& platoon,
                                                 const ReferenceProfile& profile,
                                                 const PolicyParams& params,
                                                 double s, double piece_hint);

// Time-domain realization of the distance-based policies. The headway
// policy uses the headway time as coupling weight; the constant-spacing
// policy reuses the shared kappa rescaled to time units by v_nom, so the
// closed-loop time scales match the spatial design at v_nom.
struct TemporalPolicy {
  double d = 20.0;       // equilibrium gap [m]
  double kappa_t = 0.1;  // velocity-error coupling weight [s]
  double kappa0 = 0.1;
  double v_nom = 20.0;   // nominal velocity used for the rescaling [m/s]
};

TemporalPolicy make_temporal_policy(const PolicyParams& params, double v_nom);

// Spacing errors for the distance-based policies at one time instant.
std::vector<TimingErrors> compute_spacing_time(const TemporalPlatoonState& platoon,
                                               const ReferenceProfile& profile,
                                               const TemporalPolicy& policy);

// Recovers the delay-based timing error of a vehicle at (s_now, t_now) from
// a sampled position history of its predecessor, by solving
//
//   s_prev(t_now - dt - Delta) = s_now
//
// for Delta with bisection to |position residual| < 1e-9 m. This matches
// Delta = t_now - t_prev(s_now) - dt. Throws HistoryTooShort when the
// history does not bracket the crossing and NonMonotoneHistory when the
// sampled positions are not strictly increasing.
double delay_timing_error_implicit(const Eigen::VectorXd& hist_t,
                                   const Eigen::VectorXd& hist_s,
                                   double s_now, double t_now, double dt);

// Empirical two-directional check of the space/time equivalence of the
// delay-based policy on a spatial platoon trajectory:
//  (a) pairs whose passage-time gap stays within tol of dt must have
//      inverse-velocity deviation below the finite-difference bound
//      2*tol/step + 1e-6;
//  (b) pairs whose velocities coincide within tol (read as m/s) must have a
//      constant time gap, within span * tol / v_min^2 + 1e-6.
struct Prop1PairStats {
  double dev_timing = 0.0;        // max |t_i - t_{i-1} - dt|          [s]
  double dev_velocity = 0.0;      // max |v_i - v_{i-1}|               [m/s]
  double dev_inv_velocity = 0.0;  // max |1/v_i - 1/v_{i-1}|           [s/m]
  double gap_spread = 0.0;        // max - min of (t_i - t_{i-1})      [s]
};

struct Prop1Report {
  double tol = 0.0;
  double rate_tol = 0.0;      // 2*tol/step + 1e-6
  double spread_tol = 0.0;    // span*tol/v_min^2 + 1e-6
  std::vector<Prop1PairStats> pairs;

  bool timing_within_tol() const;   // all dev_timing <= tol
  bool velocity_coincide() const;   // all dev_velocity <= tol
  bool forward_ok() const;          // direction (a) implication
  bool converse_ok() const;         // direction (b) implication
  bool pass() const;
};

Prop1Report check_prop1(const Trajectory& traj, double dt, double tol);
Prop1Report check_prop1(const Trajectory& traj, double dt, double tol,
                        double s_lo, double s_hi);

}  // namespace platoon
