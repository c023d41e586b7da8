#include "platoon/spacing_policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "platoon/errors.hpp"
#include "platoon/interp.hpp"

namespace platoon {

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::ConstantSpacing: return "constant_spacing";
    case PolicyKind::ConstantHeadway: return "constant_headway";
    case PolicyKind::DelayBased: return "delay_based";
  }
  return "?";
}

void PolicyParams::validate() const {
  if (!(dt > 0.0)) throw ConfigError("[platoon] dt must be > 0");
  if (!(h > 0.0)) throw ConfigError("[policy] h must be > 0");
  if (d < 0.0) throw ConfigError("[policy] d must be >= 0");
  if (!(kappa > 0.0)) throw ConfigError("[policy] kappa must be > 0");
  if (!(kappa0 >= 0.0 && kappa0 < 1.0)) {
    throw ConfigError("[policy] kappa0 must lie in [0, 1)");
  }
}

std::vector<TimingErrors> compute_errors_spatial(const PlatoonState& platoon,
                                                 const ReferenceProfile& profile,
                                                 const PolicyParams& params,
                                                 double s, double piece_hint) {
  if (params.kind != PolicyKind::DelayBased) {
    throw std::invalid_argument("spatial errors are defined for the delay-based policy");
  }
  const int n = static_cast<int>(platoon.vehicles.size());
  std::vector<TimingErrors> errs(n);
  const InvVrefDerivs ref = eval_inv_vref_derivs(profile, s, piece_hint);
  const double kappa = params.kappa, kappa0 = params.kappa0;

  for (int i = 0; i < n; ++i) {
    const VehicleStateSpace& x = platoon.vehicles[i];
    if (x.v <= kVelocityFloor) throw NonPositiveVelocity(i, s);
    TimingErrors& e = errs[i];
    e.e1 = 1.0 / x.v - ref.w0;
    e.e2 = -x.a / (x.v * x.v * x.v) - ref.w1;
    if (i == 0) {
      // Lead vehicle: timing error against the reference clock; the
      // predecessor/leader coupling terms vanish.
      e.Delta = x.t - platoon.tref;
      e.Delta0 = e.Delta;
      e.delta1 = e.Delta + kappa * e.e1;
      e.delta2 = e.e1 + kappa * e.e2;
    } else {
      const TimingErrors& ep = errs[i - 1];
      e.Delta = x.t - platoon.vehicles[i - 1].t - params.dt;
      e.Delta0 = ep.Delta0 + e.Delta;
      e.delta1 = (1.0 - kappa0) * e.Delta + kappa0 * e.Delta0 + kappa * e.e1;
      // The kappa0 anchor is the reference trajectory (whose velocity error
      // is identically zero), matching the reference-clock anchoring of
      // Delta0; this keeps delta1' = delta2 exact for every vehicle.
      e.delta2 = (1.0 - kappa0) * (e.e1 - ep.e1) + kappa0 * e.e1 + kappa * e.e2;
    }
    e.y = -kappa0 * e.Delta0 - kappa * e.e1;
  }
  return errs;
}

std::vector<TimingErrors> compute_errors_spatial(const PlatoonState& platoon,
                                                 const ReferenceProfile& profile,
                                                 const PolicyParams& params,
                                                 double s) {
  return compute_errors_spatial(platoon, profile, params, s, s);
}

TemporalPolicy make_temporal_policy(const PolicyParams& params, double v_nom) {
  if (params.kind == PolicyKind::DelayBased) {
    throw std::invalid_argument("temporal policy is defined for the distance-based policies");
  }
  TemporalPolicy tp;
  tp.v_nom = v_nom;
  tp.kappa0 = params.kappa0;
  tp.d = params.d;
  // Headway: the headway time is the velocity-error coupling weight.
  // Constant spacing: reuse the shared kappa rescaled into time units.
  tp.kappa_t = params.kind == PolicyKind::ConstantHeadway ? params.h
                                                          : params.kappa / v_nom;
  return tp;
}

std::vector<TimingErrors> compute_spacing_time(const TemporalPlatoonState& platoon,
                                               const ReferenceProfile& profile,
                                               const TemporalPolicy& policy) {
  const int n = static_cast<int>(platoon.vehicles.size());
  std::vector<TimingErrors> errs(n);
  const double kt = policy.kappa_t, kappa0 = policy.kappa0;

  for (int i = 0; i < n; ++i) {
    const VehicleStateTime& x = platoon.vehicles[i];
    const VrefDerivs ref = eval_vref_derivs(profile, x.s);
    TimingErrors& e = errs[i];
    e.e1 = x.v - ref.v;
    e.e2 = x.a - ref.dv * x.v;
    if (i == 0) {
      e.Delta = x.s - platoon.s_nom;
      e.Delta0 = e.Delta;
      e.delta1 = e.Delta + kt * e.e1;
      e.delta2 = e.e1 + kt * e.e2;
    } else {
      const TimingErrors& ep = errs[i - 1];
      e.Delta = x.s - platoon.vehicles[i - 1].s + policy.d;
      e.Delta0 = ep.Delta0 + e.Delta;
      e.delta1 = (1.0 - kappa0) * e.Delta + kappa0 * e.Delta0 + kt * e.e1;
      e.delta2 = (1.0 - kappa0) * (e.e1 - ep.e1) + kappa0 * e.e1 + kt * e.e2;
    }
    e.y = -kappa0 * e.Delta0 - kt * e.e1;
  }
  return errs;
}

double delay_timing_error_implicit(const Eigen::VectorXd& hist_t,
                                   const Eigen::VectorXd& hist_s, double s_now,
                                   double t_now, double dt) {
  const Eigen::Index n = hist_t.size();
  if (n < 2 || hist_s.size() != n) {
    throw HistoryTooShort("predecessor history needs >= 2 samples");
  }
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (!(hist_t[k + 1] > hist_t[k]) || !(hist_s[k + 1] > hist_s[k])) {
      throw NonMonotoneHistory("predecessor history must advance in t and s");
    }
  }
  if (s_now < hist_s[0] || s_now > hist_s[n - 1]) {
    throw HistoryTooShort("predecessor history does not cover the query position");
  }

  // The crossing time t_prev(s_now) solves s_prev(t) = s_now; then
  // Delta = t_now - t_prev(s_now) - dt. Bisection on the interpolated,
  // strictly increasing history is robust to piecewise sampling.
  MonotoneCubic s_of_t(hist_t, hist_s);
  double lo = hist_t[0], hi = hist_t[n - 1];
  double flo = s_of_t(lo) - s_now;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = s_of_t(mid) - s_now;
    if (std::abs(fmid) < 1e-9) {
      return t_now - mid - dt;
    }
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return t_now - 0.5 * (lo + hi) - dt;
}

namespace {

Prop1Report prop1_impl(const Trajectory& traj, double dt, double tol, double s_lo,
                       double s_hi) {
  Prop1Report rep;
  rep.tol = tol;
  const Eigen::Index m = traj.size();
  Eigen::Index k0 = 0, k1 = m - 1;
  while (k0 < m && traj.grid[k0] < s_lo) ++k0;
  while (k1 >= 0 && traj.grid[k1] > s_hi) --k1;
  if (k1 <= k0) {
    throw std::invalid_argument("check_prop1: empty evaluation window");
  }
  const double step = traj.grid[k0 + 1] - traj.grid[k0];
  const double span = traj.grid[k1] - traj.grid[k0];
  rep.rate_tol = 2.0 * tol / step + 1e-6;

  double v_min_seen = 1e300;
  for (int i = 1; i < traj.num_vehicles(); ++i) {
    const VehicleSeries& cur = traj.vehicles[static_cast<std::size_t>(i)];
    const VehicleSeries& pre = traj.vehicles[static_cast<std::size_t>(i - 1)];
    Prop1PairStats st;
    double gap_min = 1e300, gap_max = -1e300;
    for (Eigen::Index k = k0; k <= k1; ++k) {
      const double gap = cur.t[k] - pre.t[k];
      st.dev_timing = std::max(st.dev_timing, std::abs(gap - dt));
      st.dev_velocity = std::max(st.dev_velocity, std::abs(cur.v[k] - pre.v[k]));
      st.dev_inv_velocity =
          std::max(st.dev_inv_velocity, std::abs(1.0 / cur.v[k] - 1.0 / pre.v[k]));
      gap_min = std::min(gap_min, gap);
      gap_max = std::max(gap_max, gap);
      v_min_seen = std::min({v_min_seen, cur.v[k], pre.v[k]});
    }
    st.gap_spread = gap_max - gap_min;
    rep.pairs.push_back(st);
  }
  rep.spread_tol = span * tol / (v_min_seen * v_min_seen) + 1e-6;
  return rep;
}

}  // namespace

bool Prop1Report::timing_within_tol() const {
  return std::all_of(pairs.begin(), pairs.end(),
                     [&](const Prop1PairStats& p) { return p.dev_timing <= tol; });
}

bool Prop1Report::velocity_coincide() const {
  return std::all_of(pairs.begin(), pairs.end(),
                     [&](const Prop1PairStats& p) { return p.dev_velocity <= tol; });
}

bool Prop1Report::forward_ok() const {
  for (const auto& p : pairs) {
    if (p.dev_timing <= tol && p.dev_inv_velocity > rate_tol) return false;
  }
  return true;
}

bool Prop1Report::converse_ok() const {
  for (const auto& p : pairs) {
    if (p.dev_velocity <= tol && p.gap_spread > spread_tol) return false;
  }
  return true;
}

bool Prop1Report::pass() const {
  return timing_within_tol() && velocity_coincide() && forward_ok() && converse_ok();
}

Prop1Report check_prop1(const Trajectory& traj, double dt, double tol, double s_lo,
                        double s_hi) {
  return prop1_impl(traj, dt, tol, s_lo, s_hi);
}

Prop1Report check_prop1(const Trajectory& traj, double dt, double tol) {
  return prop1_impl(traj, dt, tol, -1e300, 1e300);
}

}  // namespace platoon
