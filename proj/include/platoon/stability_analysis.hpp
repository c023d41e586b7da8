#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "platoon/rk4.hpp"
#include "platoon/sim_engine.hpp"

namespace platoon {

// Parameters of an exponential-class ISS estimate
//
//   |x_i(t)| <= C*|x_i(0)|*exp(-lambda*t) + gamma_bar*||x_{i-1}||_inf
//               + sigma_bar*||w_i||_inf .
//
// The exponential envelope beta(r, s) = C*r*exp(-lambda*s) satisfies
// beta(r, w*s) <= beta(r, s)/w^q for all 0 < w <= 1 with any q > 0 (the
// envelope only shrinks when time is stretched), so estimates of this class
// compose across a cascade with a gain below one.
struct IssBoundSpec {
  double C = 1.0;          // overshoot factor, >= 1
  double lambda = 1.0;     // decay rate, > 0
  double gamma_bar = 0.0;  // interconnection gain, >= 0
  double sigma_bar = 0.0;  // disturbance gain, >= 0
};

// N-independent sup bound for a cascade of subsystems each satisfying the
// estimate above with gamma_bar < 1: the per-stage bounds compose as a
// geometric series, giving
//
//   sup_i ||x_i||_inf <= (C*x0_bound + sigma_bar*w_bound) / (1 - gamma_bar).
//
// Throws GainNotContractive when gamma_bar >= 1.
double compose_cascade_bound(const IssBoundSpec& spec, double x0_bound,
                             double w_bound);

// RK4 run of the scalar cascade  x_i' = -x_i + gamma*x_{i-1} + w_i(t),
// i = 0..n-1 with x_{-1} = 0. Validates the composed bound for gamma < 1 and
// reproduces the divergence counterexample for gamma = 2.
struct CascadeResult {
  Eigen::VectorXd sup_norm;     // per-system sup |x_i| over the run
  Eigen::VectorXd final_state;  // x_i at the end of the horizon
};

CascadeResult simulate_linear_cascade(
    double gamma, int n, const std::function<double(int, double)>& w,
    const Eigen::VectorXd& x0, const GridSpec& grid);

// Reduced timing-error chain on the invariant set (the dynamics left once
// the time-gap error coordinates are regulated to zero):
//
//   kappa * Delta_0' = -Delta_0
//   kappa * Delta_i' = -Delta_i + (1 - kappa0) * Delta_{i-1} .
struct ChainRun {
  double kappa = 2.0;
  double kappa0 = 0.1;
  Eigen::VectorXd grid;
  Eigen::MatrixXd delta;  // (vehicle, grid point)
};

ChainRun simulate_reduced_chain(double kappa, double kappa0,
                                const Eigen::VectorXd& delta_init,
                                const GridSpec& grid);

// Verifies the L2 contraction of the reduced chain: with all follower
// timing errors starting at zero, the running squared-signal integrals obey
//
//   int |Delta_i|^2 <= (1 - kappa0)^2 * int |Delta_{i-1}|^2 .
//
// Integrals use trapezoidal quadrature on the chain grid; a ratio is
// reported as the exact-zero sentinel (-1) when the predecessor integral is
// zero. Throws HypothesisViolated if a follower starts with Delta != 0.
struct L2Report {
  Eigen::VectorXd integrals;  // per-vehicle int_0^S |Delta_i|^2
  Eigen::VectorXd ratios;     // ratios[i-1] = integrals[i]/integrals[i-1], -1 sentinel
  double bound = 1.0;         // (1 - kappa0)^2
  bool all_within(double tol = 1e-6) const;
};

L2Report check_l2_contraction(const ChainRun& run);

// Disturbance-string-stability sweep: runs the spatial closed loop for each
// (N, kappa0) cell on the base scenario (zero initial perturbations), records
// the sup-over-vehicles norms, and flags each kappa0 as saturated when the
// sup norm grows by less than saturation_tol between the two largest N.
struct DssCell {
  int n = 0;
  double kappa0 = 0.0;
  double sup_e1_inf = 0.0;     // sup_i ||e1_i||_inf
  double sup_delta_inf = 0.0;  // sup_i ||Delta_i||_inf
  bool ok = false;
  std::string error;
};

struct DssReport {
  std::vector<int> n_list;
  std::vector<double> kappa0_list;
  std::vector<DssCell> cells;  // kappa0-major, n-minor
  double saturation_tol = 0.05;

  const DssCell& cell(int n_index, int kappa0_index) const;
  // Relative sup-norm increase between the two largest N for this kappa0.
  double tail_increase(int kappa0_index) const;
  bool saturated(int kappa0_index) const;
  // Least-squares slope of log(sup_e1) against log(N).
  double growth_exponent(int kappa0_index) const;
  std::string summary() const;
};

DssReport dss_sweep(const ScenarioConfig& base, const std::vector<int>& n_list,
                    const std::vector<double>& kappa0_list);

}  // namespace platoon
