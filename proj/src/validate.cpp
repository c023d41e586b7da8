#include "platoon/validate.hpp"

#include <cmath>

#include "platoon/rk4.hpp"
#include "platoon/spacing_policy.hpp"
#include "platoon/stability_analysis.hpp"
#include "platoon/trajectory.hpp"

namespace platoon {

namespace {

// Lead row of the reduced chain, kappa * Delta' = -Delta.
double chain_lead_endpoint(double kappa, double s_end, double step) {
  double d = 1.0;
  GridSpec grid{0.0, s_end, step};
  for (Eigen::Index k = 0; k < grid.steps(); ++k) {
    d = rk4_step([&](double, double x) { return -x / kappa; }, grid.node(k), d,
                 grid.step);
  }
  return d;
}

Trajectory shifted_copy_trajectory(double dt) {
  // Two vehicles with bit-identical velocity profiles, passage times offset
  // by exactly dt: the equivalence check must report zero deviations.
  const Eigen::Index n = 501;
  Trajectory traj;
  traj.domain = Domain::Spatial;
  traj.grid.setLinSpaced(n, 0.0, 500.0);
  traj.vehicles.resize(2);
  for (auto& veh : traj.vehicles) veh.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = traj.grid[k];
    const double v = 20.0 + 2.0 * std::sin(0.01 * s);
    // Dyadic clock values keep the +dt shift exact in floating point.
    const double t = static_cast<double>(k) * 0.0078125;
    for (int i = 0; i < 2; ++i) {
      traj.vehicles[static_cast<std::size_t>(i)].s[k] = s;
      traj.vehicles[static_cast<std::size_t>(i)].v[k] = v;
      traj.vehicles[static_cast<std::size_t>(i)].t[k] = t + i * dt;
    }
  }
  return traj;
}

}  // namespace

std::vector<CheckResult> run_validation_suite(double step_scale, double kappa0) {
  std::vector<CheckResult> results;
  auto add = [&](const std::string& name, double measured, double tol) {
    results.push_back({name, measured <= tol, measured, tol});
  };

  // Integrator accuracy on the reduced lead dynamics (analytic exponential).
  {
    const double got = chain_lead_endpoint(2.0, 2.0, 0.01 * step_scale);
    add("rk4-exponential", std::abs(got - std::exp(-1.0)), 1e-8);
  }

  // Fourth-order convergence: halving the step shrinks the endpoint error
  // by about 16.
  {
    const double e1 = std::abs(chain_lead_endpoint(2.0, 2.0, 0.1 * step_scale) -
                               std::exp(-1.0));
    const double e2 = std::abs(chain_lead_endpoint(2.0, 2.0, 0.05 * step_scale) -
                               std::exp(-1.0));
    const double ratio = e1 / e2;
    results.push_back(
        {"rk4-order", ratio >= 12.0 && ratio <= 20.0, ratio, 16.0});
  }

  // Space/time equivalence on exactly shifted copies, plus the resampling
  // round trip on a constant-speed run.
  {
    const Prop1Report rep = check_prop1(shifted_copy_trajectory(1.0), 1.0, 1e-9);
    double dev = 0.0;
    for (const auto& p : rep.pairs) {
      dev = std::max({dev, p.dev_timing, p.dev_velocity});
    }
    results.push_back({"prop1-shifted-copies", rep.pass() && dev == 0.0, dev, 0.0});

    const Eigen::Index n = 1001;
    Trajectory tt;
    tt.domain = Domain::Temporal;
    tt.grid.setLinSpaced(n, 0.0, 10.0);
    tt.vehicles.resize(1);
    tt.vehicles[0].resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      tt.vehicles[0].t[k] = tt.grid[k];
      tt.vehicles[0].s[k] = 20.0 * tt.grid[k];
      tt.vehicles[0].v[k] = 20.0;
    }
    const Trajectory ts = time_to_space_traj(tt, 0.1);
    double err = 0.0;
    for (Eigen::Index k = 0; k < ts.size(); ++k) {
      err = std::max(err, std::abs(ts.vehicles[0].t[k] - ts.grid[k] / 20.0));
    }
    add("space-time-roundtrip", err, 1e-6);
  }

  // L2 contraction of the reduced chain.
  {
    Eigen::VectorXd d0 = Eigen::VectorXd::Zero(11);
    d0[0] = 1.0;
    const ChainRun run = simulate_reduced_chain(
        2.0, kappa0, d0, GridSpec{0.0, 2000.0, 0.1 * step_scale});
    const L2Report rep = check_l2_contraction(run);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < rep.ratios.size(); ++i) {
      if (rep.ratios[i] >= 0.0) worst = std::max(worst, rep.ratios[i]);
    }
    add("l2-contraction", worst, rep.bound + 1e-6);
  }

  // Cascade bound soundness for a few contraction gains.
  {
    double worst_excess = 0.0;
    for (const double gamma : {0.3, 0.6, 0.9}) {
      const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(50);
      const CascadeResult res = simulate_linear_cascade(
          gamma, 50, [](int, double) { return 1.0; }, x0,
          GridSpec{0.0, 60.0, 0.02 * step_scale});
      const double bound =
          compose_cascade_bound({1.0, 1.0, gamma, 1.0}, 0.0, 1.0);
      worst_excess = std::max(worst_excess, res.sup_norm.maxCoeff() - bound);
    }
    add("cascade-bound-soundness", worst_excess, 1e-3);
  }

  return results;
}

}  // namespace platoon
