#include "platoon/controller.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "platoon/errors.hpp"

namespace platoon {

namespace {

void assert_hurwitz(const ControllerGains& g) {
  const Eigen::Matrix2d acl = closed_loop_matrix(g);
  const Eigen::EigenSolver<Eigen::Matrix2d> es(acl);
  for (int i = 0; i < 2; ++i) {
    if (!(es.eigenvalues()[i].real() < 0.0)) {
      throw NotHurwitz("closed-loop matrix has an eigenvalue with Re >= 0");
    }
  }
}

}  // namespace

Eigen::Matrix2d closed_loop_matrix(const ControllerGains& g) {
  Eigen::Matrix2d acl;
  acl << 0.0, 1.0, g.kappa * g.k1, g.kappa * g.k2;
  return acl;
}

ControllerGains make_gains(double omega0, double zeta0, double kappa, double kappa0) {
  if (!(omega0 > 0.0) || !(zeta0 > 0.0) || !(kappa > 0.0)) {
    throw std::invalid_argument("make_gains: omega0, zeta0, kappa must be > 0");
  }
  ControllerGains g;
  g.omega0 = omega0;
  g.zeta0 = zeta0;
  g.kappa = kappa;
  g.kappa0 = kappa0;
  g.k1 = -omega0 * omega0 / kappa;
  g.k2 = -2.0 * zeta0 * omega0 / kappa;
  assert_hurwitz(g);
  return g;
}

ControllerGains make_gains_from_feedback(double k1, double k2, double kappa,
                                         double kappa0) {
  ControllerGains g;
  g.kappa = kappa;
  g.kappa0 = kappa0;
  g.k1 = k1;
  g.k2 = k2;
  assert_hurwitz(g);
  return g;
}

double spatial_control(const VehicleStateSpace& self, const VehicleStateSpace& pred,
                       const TimingErrors& err, bool is_lead,
                       const InvVrefDerivs& ref, const ControllerGains& g,
                       const VehicleParams& p) {
  if (self.v <= kVelocityFloor) throw NonPositiveVelocity(-1, self.t);
  const double v = self.v, a = self.a;
  const double v3 = v * v * v;

  const double u_tilde = g.k1 * err.delta1 + g.k2 * err.delta2;

  double u_bar;
  if (is_lead) {
    // Coupling terms vanish for the lead vehicle; what remains of the
    // chained-error cancellation is -e2/kappa.
    u_bar = (a / v3 + ref.w1) / g.kappa + u_tilde;
  } else {
    if (pred.v <= kVelocityFloor) throw NonPositiveVelocity(-1, self.t);
    // Predecessor coupling plus the reference-schedule anchoring term
    // (the kappa0 share of -e2/kappa with the reference's own error zero).
    u_bar = a / (g.kappa * v3) -
            (1.0 - g.kappa0) / g.kappa * pred.a / (pred.v * pred.v * pred.v) +
            g.kappa0 / g.kappa * ref.w1 + u_tilde;
  }

  // Feedback linearization of the third-order model in the spatial domain.
  return a + 3.0 * p.tau * a * a / v - p.tau * v3 * v * (ref.w2 + u_bar);
}

ControllerGains make_temporal_gains(double omega0, double zeta0,
                                    const TemporalPolicy& policy) {
  return make_gains(policy.v_nom * omega0, zeta0, policy.kappa_t, policy.kappa0);
}

double headway_control_time(const VehicleStateTime& self, const VehicleStateTime& pred,
                            const TimingErrors& err, bool is_lead,
                            const ReferenceProfile& profile,
                            const ControllerGains& g, const TemporalPolicy& policy,
                            const VehicleParams& p) {
  const VrefDerivs ref = eval_vref_derivs(profile, self.s);
  const double e2_self = self.a - ref.dv * self.v;

  const double u_tilde = g.k1 * err.delta1 + g.k2 * err.delta2;

  double u_bar;
  if (is_lead) {
    u_bar = -e2_self / policy.kappa_t + u_tilde;
  } else {
    const double e2_pred = pred.a - eval_vref_derivs(profile, pred.s).dv * pred.v;
    u_bar = -(1.0 - policy.kappa0) / policy.kappa_t * (e2_self - e2_pred) -
            policy.kappa0 / policy.kappa_t * e2_self + u_tilde;
  }

  // Feedback linearization of the same model in the time domain, with the
  // reference evaluated along the vehicle's own position.
  return self.a + p.tau * (ref.ddv * self.v * self.v + ref.dv * self.a + u_bar);
}

}  // namespace platoon
