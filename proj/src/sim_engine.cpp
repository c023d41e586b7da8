#include "platoon/sim_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "platoon/errors.hpp"
#include "platoon/rng.hpp"

namespace platoon {

std::string to_string(DisturbanceKind k) {
  switch (k) {
    case DisturbanceKind::None: return "none";
    case DisturbanceKind::SineOfS: return "sine_of_s";
    case DisturbanceKind::PerVehicleTable: return "per_vehicle_table";
  }
  return "?";
}

std::string to_string(DisturbanceTarget t) {
  return t == DisturbanceTarget::All ? "all" : "followers";
}

double DisturbanceSpec::eval(int vehicle, double x) const {
  switch (kind) {
    case DisturbanceKind::None:
      return 0.0;
    case DisturbanceKind::SineOfS:
      if (applies_to == DisturbanceTarget::FollowersOnly && vehicle == 0) return 0.0;
      return amplitude * std::sin(freq * x);
    case DisturbanceKind::PerVehicleTable: {
      double w = 0.0;
      for (const SineRow& row : table) {
        if (row.vehicle == vehicle) {
          w += row.amplitude * std::sin(row.freq * x + row.phase);
        }
      }
      return w;
    }
  }
  return 0.0;
}

void ScenarioConfig::validate() const {
  if (n_followers < 1) throw ConfigError("[platoon] n_followers must be >= 1");
  if (!(grid.step > 0.0)) throw ConfigError("[sim] step must be > 0");
  if (!(grid.end > grid.start)) throw ConfigError("[sim] end must exceed start");
  if (grid.steps() < 1) throw ConfigError("[sim] grid shorter than one step");
  if (ic_spread.timing < 0.0 || ic_spread.velocity < 0.0 || ic_spread.accel < 0.0) {
    throw ConfigError("[sim] ic_spread components must be >= 0");
  }
  policy.validate();
  profile.validate();
  if (!(model.tau > 0.0)) throw ConfigError("[model] tau must be > 0");
  if (!(controller.omega0 > 0.0) || !(controller.zeta0 > 0.0)) {
    throw ConfigError("[controller] omega0 and zeta0 must be > 0");
  }
}

std::vector<Perturbation> gen_initial_conditions(std::uint64_t seed, int n_vehicles,
                                                 const IcSpread& spread) {
  Xorshift64Star rng(seed);
  std::vector<Perturbation> out(static_cast<std::size_t>(n_vehicles));
  for (Perturbation& p : out) {
    p.timing = rng.symmetric(spread.timing);
    p.velocity = rng.symmetric(spread.velocity);
    p.accel = rng.symmetric(spread.accel);
  }
  return out;
}

PlatoonState equilibrium_state_spatial(const ScenarioConfig& cfg) {
  PlatoonState st;
  st.tref = 0.0;
  const double s0 = cfg.grid.start;
  const double v0 = eval_vref(cfg.profile, s0);
  const double a0 = equilibrium_accel(cfg.profile, s0);
  st.vehicles.resize(static_cast<std::size_t>(cfg.num_vehicles()));
  for (int i = 0; i < cfg.num_vehicles(); ++i) {
    st.vehicles[static_cast<std::size_t>(i)] = {static_cast<double>(i) * cfg.policy.dt,
                                                v0, a0};
  }
  return st;
}

PlatoonState perturbed_state_spatial(const ScenarioConfig& cfg) {
  PlatoonState st = equilibrium_state_spatial(cfg);
  const auto perts =
      gen_initial_conditions(cfg.seed, cfg.num_vehicles(), cfg.ic_spread);
  for (int i = 0; i < cfg.num_vehicles(); ++i) {
    auto& x = st.vehicles[static_cast<std::size_t>(i)];
    x.t += perts[static_cast<std::size_t>(i)].timing;
    x.v += perts[static_cast<std::size_t>(i)].velocity;
    x.a += perts[static_cast<std::size_t>(i)].accel;
  }
  return st;
}

TemporalPlatoonState equilibrium_state_temporal(const ScenarioConfig& cfg) {
  TemporalPlatoonState st;
  st.s_nom = cfg.s_origin;
  const TemporalPolicy tp =
      make_temporal_policy(cfg.policy, eval_vref(cfg.profile, cfg.s_origin));
  st.vehicles.resize(static_cast<std::size_t>(cfg.num_vehicles()));
  for (int i = 0; i < cfg.num_vehicles(); ++i) {
    const double s = cfg.s_origin - static_cast<double>(i) * tp.d;
    const VrefDerivs ref = eval_vref_derivs(cfg.profile, s);
    st.vehicles[static_cast<std::size_t>(i)] = {s, ref.v, ref.v * ref.dv};
  }
  return st;
}

TemporalPlatoonState perturbed_state_temporal(const ScenarioConfig& cfg) {
  TemporalPlatoonState st = equilibrium_state_temporal(cfg);
  const TemporalPolicy tp =
      make_temporal_policy(cfg.policy, eval_vref(cfg.profile, cfg.s_origin));
  const auto perts =
      gen_initial_conditions(cfg.seed, cfg.num_vehicles(), cfg.ic_spread);
  for (int i = 0; i < cfg.num_vehicles(); ++i) {
    auto& x = st.vehicles[static_cast<std::size_t>(i)];
    // A vehicle running late by dt sits v_nom*dt behind its nominal slot.
    x.s -= tp.v_nom * perts[static_cast<std::size_t>(i)].timing;
    x.v += perts[static_cast<std::size_t>(i)].velocity;
    x.a += perts[static_cast<std::size_t>(i)].accel;
  }
  return st;
}

namespace {

PlatoonState unpack_spatial(const Eigen::VectorXd& z, int n_veh) {
  PlatoonState st;
  st.tref = z[0];
  st.vehicles.resize(static_cast<std::size_t>(n_veh));
  for (int i = 0; i < n_veh; ++i) {
    st.vehicles[static_cast<std::size_t>(i)] = {z[1 + 3 * i], z[2 + 3 * i],
                                                z[3 + 3 * i]};
  }
  return st;
}

Eigen::VectorXd pack_spatial(const PlatoonState& st) {
  const int n_veh = static_cast<int>(st.vehicles.size());
  Eigen::VectorXd z(1 + 3 * n_veh);
  z[0] = st.tref;
  for (int i = 0; i < n_veh; ++i) {
    const auto& x = st.vehicles[static_cast<std::size_t>(i)];
    z[1 + 3 * i] = x.t;
    z[2 + 3 * i] = x.v;
    z[3 + 3 * i] = x.a;
  }
  return z;
}

TemporalPlatoonState unpack_temporal(const Eigen::VectorXd& z, int n_veh) {
  TemporalPlatoonState st;
  st.s_nom = z[0];
  st.vehicles.resize(static_cast<std::size_t>(n_veh));
  for (int i = 0; i < n_veh; ++i) {
    st.vehicles[static_cast<std::size_t>(i)] = {z[1 + 3 * i], z[2 + 3 * i],
                                                z[3 + 3 * i]};
  }
  return st;
}

Eigen::VectorXd pack_temporal(const TemporalPlatoonState& st) {
  const int n_veh = static_cast<int>(st.vehicles.size());
  Eigen::VectorXd z(1 + 3 * n_veh);
  z[0] = st.s_nom;
  for (int i = 0; i < n_veh; ++i) {
    const auto& x = st.vehicles[static_cast<std::size_t>(i)];
    z[1 + 3 * i] = x.s;
    z[2 + 3 * i] = x.v;
    z[3 + 3 * i] = x.a;
  }
  return z;
}

// Controls and disturbances for the whole platoon at one road position.
struct StageInputs {
  std::vector<TimingErrors> errs;
  std::vector<double> u, w;
};

StageInputs spatial_stage_inputs(const PlatoonState& st, const ScenarioConfig& cfg,
                                 const ControllerGains& gains, double s,
                                 double hint) {
  const int n_veh = static_cast<int>(st.vehicles.size());
  for (int i = 0; i < n_veh; ++i) {
    if (st.vehicles[static_cast<std::size_t>(i)].v <= kVelocityFloor) {
      throw NonPositiveVelocity(i, s);
    }
  }
  StageInputs in;
  in.errs = compute_errors_spatial(st, cfg.profile, cfg.policy, s, hint);
  in.u.resize(static_cast<std::size_t>(n_veh));
  in.w.resize(static_cast<std::size_t>(n_veh));
  const InvVrefDerivs ref = eval_inv_vref_derivs(cfg.profile, s, hint);
  for (int i = 0; i < n_veh; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto& self = st.vehicles[idx];
    const auto& pred = st.vehicles[i == 0 ? 0 : idx - 1];
    in.u[idx] = spatial_control(self, pred, in.errs[idx], i == 0, ref, gains,
                                cfg.model);
    in.w[idx] = cfg.disturbance.eval(i, s);
  }
  return in;
}

StageInputs temporal_stage_inputs(const TemporalPlatoonState& st,
                                  const ScenarioConfig& cfg,
                                  const ControllerGains& gains,
                                  const TemporalPolicy& tp, double t) {
  const int n_veh = static_cast<int>(st.vehicles.size());
  StageInputs in;
  in.errs = compute_spacing_time(st, cfg.profile, tp);
  in.u.resize(static_cast<std::size_t>(n_veh));
  in.w.resize(static_cast<std::size_t>(n_veh));
  for (int i = 0; i < n_veh; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto& self = st.vehicles[idx];
    const auto& pred = st.vehicles[i == 0 ? 0 : idx - 1];
    in.u[idx] = headway_control_time(self, pred, in.errs[idx], i == 0,
                                     cfg.profile, gains, tp, cfg.model);
    in.w[idx] = cfg.disturbance.eval(i, t);
  }
  return in;
}

// Shared spatial integration loop; the observer sees every grid node.
template <class Observer>
void spatial_loop(const ScenarioConfig& cfg, const PlatoonState& init,
                  Observer&& observe) {
  cfg.validate();
  if (cfg.policy.kind != PolicyKind::DelayBased) {
    throw std::invalid_argument("spatial runs use the delay-based policy");
  }
  const int n_veh = cfg.num_vehicles();
  const ControllerGains gains = make_gains(cfg.controller.omega0, cfg.controller.zeta0,
                                           cfg.policy.kappa, cfg.policy.kappa0);

  double hint = cfg.grid.start;
  auto rhs = [&](double s, const Eigen::VectorXd& z) -> Eigen::VectorXd {
    const PlatoonState st = unpack_spatial(z, n_veh);
    const StageInputs in = spatial_stage_inputs(st, cfg, gains, s, hint);
    Eigen::VectorXd dz(z.size());
    dz[0] = eval_inv_vref_derivs(cfg.profile, s, hint).w0;  // reference clock
    for (int i = 0; i < n_veh; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const VehicleStateSpace d =
          space_rhs(st.vehicles[idx], in.u[idx], in.w[idx], cfg.model);
      dz[1 + 3 * i] = d.t;
      dz[2 + 3 * i] = d.v;
      dz[3 + 3 * i] = d.a;
    }
    return dz;
  };

  Eigen::VectorXd z = pack_spatial(init);
  const Eigen::Index n_steps = cfg.grid.steps();
  for (Eigen::Index k = 0; k <= n_steps; ++k) {
    const double s = cfg.grid.node(k);
    {
      const PlatoonState st = unpack_spatial(z, n_veh);
      hint = s;
      observe(k, s, st, spatial_stage_inputs(st, cfg, gains, s, s));
    }
    if (k == n_steps) break;
    // All four stages of the step evaluate the profile piece containing the
    // step midpoint, so a step never straddles a curvature jump.
    hint = s + 0.5 * cfg.grid.step;
    z = rk4_step(rhs, s, z, cfg.grid.step);
    if (!z.allFinite()) {
      throw NonFinite("spatial run produced a non-finite state at s = " +
                      std::to_string(cfg.grid.node(k + 1)));
    }
  }
}

template <class Observer>
void temporal_loop(const ScenarioConfig& cfg, const TemporalPlatoonState& init,
                   Observer&& observe) {
  cfg.validate();
  if (cfg.policy.kind == PolicyKind::DelayBased) {
    throw std::invalid_argument("temporal runs use a distance-based policy");
  }
  const int n_veh = cfg.num_vehicles();
  const TemporalPolicy tp =
      make_temporal_policy(cfg.policy, eval_vref(cfg.profile, cfg.s_origin));
  const ControllerGains gains =
      make_temporal_gains(cfg.controller.omega0, cfg.controller.zeta0, tp);

  auto rhs = [&](double t, const Eigen::VectorXd& z) -> Eigen::VectorXd {
    const TemporalPlatoonState st = unpack_temporal(z, n_veh);
    const StageInputs in = temporal_stage_inputs(st, cfg, gains, tp, t);
    Eigen::VectorXd dz(z.size());
    dz[0] = eval_vref(cfg.profile, st.s_nom);  // nominal trajectory
    for (int i = 0; i < n_veh; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const VehicleStateTime d =
          time_rhs(st.vehicles[idx], in.u[idx], in.w[idx], cfg.model);
      dz[1 + 3 * i] = d.s;
      dz[2 + 3 * i] = d.v;
      dz[3 + 3 * i] = d.a;
    }
    return dz;
  };

  Eigen::VectorXd z = pack_temporal(init);
  const Eigen::Index n_steps = cfg.grid.steps();
  for (Eigen::Index k = 0; k <= n_steps; ++k) {
    const double t = cfg.grid.node(k);
    {
      const TemporalPlatoonState st = unpack_temporal(z, n_veh);
      observe(k, t, st, temporal_stage_inputs(st, cfg, gains, tp, t));
    }
    if (k == n_steps) break;
    z = rk4_step(rhs, t, z, cfg.grid.step);
    if (!z.allFinite()) {
      throw NonFinite("temporal run produced a non-finite state at t = " +
                      std::to_string(cfg.grid.node(k + 1)));
    }
  }
}

Trajectory make_empty_trajectory(const ScenarioConfig& cfg, Domain domain) {
  Trajectory traj;
  traj.domain = domain;
  traj.grid = cfg.grid.nodes();
  traj.vehicles.resize(static_cast<std::size_t>(cfg.num_vehicles()));
  for (auto& veh : traj.vehicles) veh.resize(traj.grid.size());
  return traj;
}

void record_errors(VehicleSeries& veh, Eigen::Index k, const TimingErrors& e,
                   double u, double w) {
  veh.u[k] = u;
  veh.w[k] = w;
  veh.Delta[k] = e.Delta;
  veh.Delta0[k] = e.Delta0;
  veh.delta1[k] = e.delta1;
  veh.delta2[k] = e.delta2;
  veh.e1[k] = e.e1;
  veh.e2[k] = e.e2;
  veh.y[k] = e.y;
}

}  // namespace

Trajectory run_spatial_from(const ScenarioConfig& cfg, const PlatoonState& init) {
  Trajectory traj = make_empty_trajectory(cfg, Domain::Spatial);
  spatial_loop(cfg, init,
               [&](Eigen::Index k, double s, const PlatoonState& st,
                   const StageInputs& in) {
                 for (int i = 0; i < cfg.num_vehicles(); ++i) {
                   const auto idx = static_cast<std::size_t>(i);
                   VehicleSeries& veh = traj.vehicles[idx];
                   veh.s[k] = s;
                   veh.t[k] = st.vehicles[idx].t;
                   veh.v[k] = st.vehicles[idx].v;
                   veh.a[k] = st.vehicles[idx].a;
                   record_errors(veh, k, in.errs[idx], in.u[idx], in.w[idx]);
                 }
               });
  return traj;
}

Trajectory run_spatial(const ScenarioConfig& cfg) {
  return run_spatial_from(cfg, perturbed_state_spatial(cfg));
}

SupNorms run_spatial_sup_norms(const ScenarioConfig& cfg, double window_lo) {
  SupNorms norms;
  norms.e1_inf.setZero(cfg.num_vehicles());
  norms.delta_inf.setZero(cfg.num_vehicles());
  spatial_loop(cfg, perturbed_state_spatial(cfg),
               [&](Eigen::Index, double s, const PlatoonState&, const StageInputs& in) {
                 if (s < window_lo) return;
                 for (int i = 0; i < cfg.num_vehicles(); ++i) {
                   const auto idx = static_cast<std::size_t>(i);
                   norms.e1_inf[i] = std::max(norms.e1_inf[i], std::abs(in.errs[idx].e1));
                   norms.delta_inf[i] =
                       std::max(norms.delta_inf[i], std::abs(in.errs[idx].Delta));
                 }
               });
  return norms;
}

Trajectory run_temporal_from(const ScenarioConfig& cfg,
                             const TemporalPlatoonState& init) {
  Trajectory traj = make_empty_trajectory(cfg, Domain::Temporal);
  temporal_loop(cfg, init,
                [&](Eigen::Index k, double t, const TemporalPlatoonState& st,
                    const StageInputs& in) {
                  for (int i = 0; i < cfg.num_vehicles(); ++i) {
                    const auto idx = static_cast<std::size_t>(i);
                    VehicleSeries& veh = traj.vehicles[idx];
                    veh.t[k] = t;
                    veh.s[k] = st.vehicles[idx].s;
                    veh.v[k] = st.vehicles[idx].v;
                    veh.a[k] = st.vehicles[idx].a;
                    record_errors(veh, k, in.errs[idx], in.u[idx], in.w[idx]);
                  }
                });
  return traj;
}

Trajectory run_temporal(const ScenarioConfig& cfg) {
  return run_temporal_from(cfg, perturbed_state_temporal(cfg));
}

ScenarioConfig derive_headway_config(const ScenarioConfig& spatial_cfg) {
  ScenarioConfig tc = spatial_cfg;
  tc.domain = Domain::Temporal;
  tc.policy.kind = PolicyKind::ConstantHeadway;
  tc.s_origin = spatial_cfg.grid.start;
  const double v_nom = eval_vref(spatial_cfg.profile, spatial_cfg.grid.start);
  tc.policy.d = v_nom * spatial_cfg.policy.dt;
  tc.policy.h = spatial_cfg.policy.kappa / v_nom;
  // Horizon: nominal traversal plus the trailing vehicle's offset plus a
  // settling margin of ten closed-loop time constants.
  const double t_traverse = eval_tref(spatial_cfg.profile, spatial_cfg.grid.start,
                                      spatial_cfg.grid.end, spatial_cfg.grid.step);
  const double settle =
      10.0 / (spatial_cfg.controller.zeta0 * spatial_cfg.controller.omega0 * v_nom);
  tc.grid.start = 0.0;
  tc.grid.step = spatial_cfg.grid.step / v_nom;
  tc.grid.end = std::ceil(t_traverse +
                          (spatial_cfg.n_followers + 1) * spatial_cfg.policy.dt +
                          settle);
  return tc;
}

}  // namespace platoon
