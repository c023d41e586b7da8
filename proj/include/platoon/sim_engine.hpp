#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "platoon/controller.hpp"
#include "platoon/reference_profile.hpp"
#include "platoon/rk4.hpp"
#include "platoon/spacing_policy.hpp"
#include "platoon/trajectory.hpp"
#include "platoon/vehicle_model.hpp"

namespace platoon {

enum class DisturbanceKind { None, SineOfS, PerVehicleTable };
enum class DisturbanceTarget { All, FollowersOnly };

std::string to_string(DisturbanceKind k);
std::string to_string(DisturbanceTarget t);

// External disturbance as a function of the run's independent variable
// (road position for spatial runs, time for temporal runs).
struct SineRow {
  int vehicle = 0;
  double amplitude = 0.0;
  double freq = 0.0;
  double phase = 0.0;
};

struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::None;
  double amplitude = 1.0;
  double freq = 0.01;  // [rad/m] spatial, [rad/s] temporal
  DisturbanceTarget applies_to = DisturbanceTarget::All;
  std::vector<SineRow> table;  // PerVehicleTable rows; unlisted vehicles get 0

  double eval(int vehicle, double x) const;
};

// Magnitudes of the uniform initial-condition perturbations, per component.
struct IcSpread {
  double timing = 0.0;    // [s]
  double velocity = 0.0;  // [m/s]
  double accel = 0.0;     // [m/s^2]
};

struct SweepSpec {
  std::vector<int> n_list = {10, 20, 40, 80};
  std::vector<double> kappa0_list = {0.0, 0.05, 0.1, 0.15, 0.2};
};

struct ControllerSettings {
  double omega0 = 0.05;  // [rad/m]
  double zeta0 = 0.9;
};

struct ScenarioConfig {
  int n_followers = 5;
  Domain domain = Domain::Spatial;
  GridSpec grid;             // s-grid [m] for spatial runs, t-grid [s] for temporal
  double s_origin = 0.0;     // road position of the nominal trajectory at t_start
  std::uint64_t seed = 1;
  IcSpread ic_spread;
  DisturbanceSpec disturbance;
  PolicyParams policy;
  ControllerSettings controller;
  VehicleParams model;
  ReferenceProfile profile;
  SweepSpec sweep;

  int num_vehicles() const { return n_followers + 1; }
  void validate() const;  // throws ConfigError
};

// Per-vehicle perturbation drawn uniformly from [-spread, +spread] per
// component with the embedded xorshift64* generator; the draw order is
// (timing, velocity, accel) for vehicle 0, 1, ... so a seed reproduces the
// same platoon on every platform.
struct Perturbation {
  double timing = 0.0;
  double velocity = 0.0;
  double accel = 0.0;
};

std::vector<Perturbation> gen_initial_conditions(std::uint64_t seed, int n_vehicles,
                                                 const IcSpread& spread);

// Exact equilibrium at the start of the scenario: vehicle i passes s_start
// at i*dt on the nominal schedule, at the reference velocity, with the
// acceleration that holds vref.
PlatoonState equilibrium_state_spatial(const ScenarioConfig& cfg);
TemporalPlatoonState equilibrium_state_temporal(const ScenarioConfig& cfg);

PlatoonState perturbed_state_spatial(const ScenarioConfig& cfg);
TemporalPlatoonState perturbed_state_temporal(const ScenarioConfig& cfg);

// Closed-loop spatial-domain platoon run under the delay-based policy:
// fixed-step RK4 on the stacked state (T_ref, {t_i, v_i, a_i}) with the
// feedback-linearizing controller and disturbances evaluated at every
// stage. Deterministic for a given config. Throws NonPositiveVelocity with
// the offending vehicle and position when a velocity reaches the floor.
Trajectory run_spatial(const ScenarioConfig& cfg);
Trajectory run_spatial_from(const ScenarioConfig& cfg, const PlatoonState& init);

// Streaming variant for sweeps: integrates without recording the dense
// trajectory and returns per-vehicle sup norms taken over grid points with
// s >= window_lo (the default covers the whole run).
struct SupNorms {
  Eigen::VectorXd e1_inf;     // per-vehicle sup |e1|
  Eigen::VectorXd delta_inf;  // per-vehicle sup |Delta|
};
SupNorms run_spatial_sup_norms(const ScenarioConfig& cfg,
                               double window_lo = -1e300);

// Time-domain comparison run under a distance-based policy.
Trajectory run_temporal(const ScenarioConfig& cfg);
Trajectory run_temporal_from(const ScenarioConfig& cfg,
                             const TemporalPlatoonState& init);

// Derives the time-domain constant-headway comparison scenario from a
// spatial delay-based one: same platoon, profile and seed; equilibrium gap
// d = vref(s_start)*dt; headway h = kappa/v_nom; time grid sized so every
// vehicle traverses the full s-range with settling margin.
ScenarioConfig derive_headway_config(const ScenarioConfig& spatial_cfg);

}  // namespace platoon
