#pragma once

#include <Eigen/Dense>

#include "platoon/reference_profile.hpp"
#include "platoon/spacing_policy.hpp"
#include "platoon/vehicle_model.hpp"

namespace platoon {

// Feedback row applied to the time-gap error coordinates (delta1, delta2),
// chosen so the closed-loop pair
//
//   delta1' = delta2
//   delta2' = kappa*(K1*delta1 + K2*delta2)
//
// has characteristic polynomial  lambda^2 + 2*zeta0*omega0*lambda + omega0^2,
// i.e. K = -(omega0^2, 2*zeta0*omega0) / kappa. In the spatial design omega0
// is a spatial frequency [rad/m]; the temporal comparison design passes the
// rescaled omega0 and coupling weight instead.
struct ControllerGains {
  double omega0 = 0.05;
  double zeta0 = 0.9;
  double kappa = 2.0;
  double kappa0 = 0.1;
  double k1 = 0.0;
  double k2 = 0.0;
};

// Builds the gain set and asserts the closed-loop matrix is Hurwitz before
// returning (both eigenvalues with strictly negative real part).
ControllerGains make_gains(double omega0, double zeta0, double kappa,
                           double kappa0 = 0.1);

// Same Hurwitz gate for an arbitrary feedback row; lets callers (and tests)
// feed raw gains through the assertion. Throws NotHurwitz.
ControllerGains make_gains_from_feedback(double k1, double k2, double kappa,
                                         double kappa0 = 0.1);

// The 2x2 closed-loop matrix [[0, 1], [kappa*K1, kappa*K2]].
Eigen::Matrix2d closed_loop_matrix(const ControllerGains& g);

// Feedback-linearizing spatial-domain control input for one vehicle of the
// third-order model. err holds the vehicle's own error coordinates; pred is
// the predecessor's spatial state (ignored for the lead vehicle, whose
// coupling terms vanish). ref must be evaluated at the same s (and piece)
// as err.
double spatial_control(const VehicleStateSpace& self,
                       const VehicleStateSpace& pred,
                       const TimingErrors& err, bool is_lead,
                       const InvVrefDerivs& ref, const ControllerGains& g,
                       const VehicleParams& p);

// Time-domain counterpart used by the distance-based comparison policies:
// feedback linearization of the same model in time, tracking vref evaluated
// at the vehicle's own position, with gains rescaled so the closed-loop
// time constants match the spatial design at policy.v_nom.
double headway_control_time(const VehicleStateTime& self,
                            const VehicleStateTime& pred,
                            const TimingErrors& err, bool is_lead,
                            const ReferenceProfile& profile,
                            const ControllerGains& g,
                            const TemporalPolicy& policy,
                            const VehicleParams& p);

// Gains for the temporal comparison controller: spatial eigenvalues
// lambda_s map to temporal eigenvalues v_nom * lambda_s.
ControllerGains make_temporal_gains(double omega0, double zeta0,
                                    const TemporalPolicy& policy);

}  // namespace platoon
