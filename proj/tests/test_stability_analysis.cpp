#include <cmath>

#include "doctest.h"
#include "platoon/errors.hpp"
#include "platoon/rng.hpp"
#include "platoon/stability_analysis.hpp"
#include "test_helpers.hpp"

using namespace platoon;

TEST_CASE("composed cascade bound") {
  CHECK(compose_cascade_bound({1.0, 1.0, 0.9, 1.0}, 1.0, 0.0) ==
        doctest::Approx(10.0).epsilon(1e-12));
  // Decoupled subsystems: the bound is the single-system estimate.
  CHECK(compose_cascade_bound({2.5, 0.7, 0.0, 3.0}, 0.4, 0.1) ==
        doctest::Approx(2.5 * 0.4 + 3.0 * 0.1).epsilon(1e-12));
  CHECK(compose_cascade_bound({2.0, 1.0, 0.5, 3.0}, 0.1, 0.2) ==
        doctest::Approx(1.6).epsilon(1e-12));
  CHECK_THROWS_AS(compose_cascade_bound({1.0, 1.0, 1.0, 1.0}, 1.0, 1.0),
                  GainNotContractive);
  CHECK_THROWS_AS(compose_cascade_bound({0.5, 1.0, 0.5, 1.0}, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("amplifying cascade grows without bound") {
  const int n = 21;
  const CascadeResult res = simulate_linear_cascade(
      2.0, n, [](int, double) { return 1.0; }, Eigen::VectorXd::Zero(n),
      GridSpec{0.0, 100.0, 0.005});
  for (int i = 0; i < n; ++i) {
    const double expected = std::pow(2.0, i + 1) - 1.0;
    CHECK(std::abs(res.final_state[i] - expected) <= 1e-3 * expected);
  }
  CHECK(res.final_state[20] > 100.0 * res.final_state[10]);
}

TEST_CASE("contractive cascade saturates uniformly") {
  const int n = 50;
  const CascadeResult res = simulate_linear_cascade(
      0.5, n, [](int, double) { return 1.0; }, Eigen::VectorXd::Zero(n),
      GridSpec{0.0, 60.0, 0.01});
  const double bound = compose_cascade_bound({1.0, 1.0, 0.5, 1.0}, 0.0, 1.0);
  CHECK(bound == doctest::Approx(2.0).epsilon(1e-12));
  for (int i = 0; i < n; ++i) {
    CHECK(res.sup_norm[i] <= bound + 1e-9);
  }
  // Steady state of system i is sum_{j<=i} 0.5^j, approaching 2 from below.
  CHECK(res.final_state[n - 1] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("quiescent cascade stays at zero") {
  const CascadeResult res = simulate_linear_cascade(
      0.7, 5, [](int, double) { return 0.0; }, Eigen::VectorXd::Zero(5),
      GridSpec{0.0, 10.0, 0.01});
  CHECK(res.sup_norm.maxCoeff() == 0.0);
}

TEST_CASE("cascade bound is sound for random contractive specs") {
  Xorshift64Star rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    const double gamma = rng.uniform(0.05, 0.95);
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 58.0));
    const double x0_bound = rng.uniform(0.0, 2.0);
    const double w_bound = rng.uniform(0.0, 2.0);

    Eigen::VectorXd x0(n);
    std::vector<double> amp(static_cast<std::size_t>(n)), freq(static_cast<std::size_t>(n)),
        phase(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      x0[i] = rng.symmetric(x0_bound);
      amp[static_cast<std::size_t>(i)] = rng.uniform(0.0, w_bound);
      freq[static_cast<std::size_t>(i)] = rng.uniform(0.0, 3.0);
      phase[static_cast<std::size_t>(i)] = rng.uniform(0.0, 6.28);
    }
    auto w = [&](int i, double t) {
      const auto idx = static_cast<std::size_t>(i);
      return amp[idx] * std::sin(freq[idx] * t + phase[idx]);
    };
    const CascadeResult res =
        simulate_linear_cascade(gamma, n, w, x0, GridSpec{0.0, 40.0, 0.02});
    const double bound =
        compose_cascade_bound({1.0, 1.0, gamma, 1.0}, x0_bound, w_bound);
    CHECK(res.sup_norm.maxCoeff() <= bound + 1e-9);
  }
}

TEST_CASE("reduced chain lead row is the analytic exponential") {
  Eigen::VectorXd d0(1);
  d0[0] = 1.0;
  const ChainRun run = simulate_reduced_chain(2.0, 0.1, d0, GridSpec{0.0, 2.0, 0.01});
  CHECK(std::abs(run.delta(0, run.grid.size() - 1) - std::exp(-1.0)) <= 1e-8);
}

TEST_CASE("squared-signal contraction along the chain") {
  for (const double kappa0 : {0.0, 0.1, 0.2}) {
    Eigen::VectorXd d0 = Eigen::VectorXd::Zero(11);
    d0[0] = 1.0;
    const ChainRun run =
        simulate_reduced_chain(2.0, kappa0, d0, GridSpec{0.0, 2000.0, 0.1});
    const L2Report rep = check_l2_contraction(run);
    CHECK(rep.bound == doctest::Approx((1.0 - kappa0) * (1.0 - kappa0)));
    CHECK(rep.all_within(1e-6));
    for (Eigen::Index i = 0; i < rep.ratios.size(); ++i) {
      CHECK(rep.ratios[i] <= rep.bound + 1e-6);
    }
  }
}

TEST_CASE("contraction holds at intermediate horizons too") {
  Eigen::VectorXd d0 = Eigen::VectorXd::Zero(6);
  d0[0] = 1.0;
  const GridSpec grid{0.0, 2000.0, 0.1};
  const ChainRun full = simulate_reduced_chain(2.0, 0.1, d0, grid);

  // Running trapezoid integrals, ratio checked on a subsample of horizons.
  const Eigen::Index m = full.grid.size();
  Eigen::MatrixXd cum = Eigen::MatrixXd::Zero(6, m);
  for (Eigen::Index k = 1; k < m; ++k) {
    for (int i = 0; i < 6; ++i) {
      const double f0 = full.delta(i, k - 1) * full.delta(i, k - 1);
      const double f1 = full.delta(i, k) * full.delta(i, k);
      cum(i, k) = cum(i, k - 1) + 0.5 * (f0 + f1) * grid.step;
    }
  }
  const double bound = 0.81;
  for (Eigen::Index sample = 1; sample <= 100; ++sample) {
    const Eigen::Index k = sample * (m - 1) / 100;
    for (int i = 1; i < 6; ++i) {
      if (cum(i - 1, k) == 0.0) continue;
      CHECK(cum(i, k) / cum(i - 1, k) <= bound + 1e-6);
    }
  }
}

TEST_CASE("contraction check enforces its hypothesis") {
  Eigen::VectorXd d0 = Eigen::VectorXd::Zero(4);
  d0[0] = 1.0;
  d0[2] = 0.5;  // follower starting off the nominal gap
  const ChainRun run = simulate_reduced_chain(2.0, 0.1, d0, GridSpec{0.0, 10.0, 0.1});
  CHECK_THROWS_AS(check_l2_contraction(run), HypothesisViolated);

  // All-zero lead: every integral is zero and ratios are sentinels.
  const ChainRun quiet = simulate_reduced_chain(
      2.0, 0.1, Eigen::VectorXd::Zero(4), GridSpec{0.0, 10.0, 0.1});
  const L2Report rep = check_l2_contraction(quiet);
  CHECK(rep.integrals.maxCoeff() == 0.0);
  for (Eigen::Index i = 0; i < rep.ratios.size(); ++i) {
    CHECK(rep.ratios[i] == -1.0);
  }
  CHECK(rep.all_within());
}

TEST_CASE("sweep reports are deterministic") {
  ScenarioConfig base = platoon::testing::constant_scenario();
  base.grid.end = 500.0;
  base.disturbance.kind = DisturbanceKind::SineOfS;
  base.disturbance.amplitude = 1.0;
  base.disturbance.freq = 0.01;
  base.disturbance.applies_to = DisturbanceTarget::FollowersOnly;

  const std::vector<int> n_list{3, 5};
  const std::vector<double> kappa0_list{0.0, 0.1};
  const DssReport a = dss_sweep(base, n_list, kappa0_list);
  const DssReport b = dss_sweep(base, n_list, kappa0_list);
  REQUIRE(a.cells.size() == 4);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].ok);
    CHECK(a.cells[i].sup_e1_inf == b.cells[i].sup_e1_inf);
    CHECK(a.cells[i].sup_delta_inf == b.cells[i].sup_delta_inf);
  }
}

TEST_CASE("leader weighting orders the full-model sup norms") {
  // The reduced-chain contraction factor (1-kappa0)^2 predicts the ordering
  // of the disturbed full model's sup norms in kappa0 (ordering only).
  ScenarioConfig base = platoon::testing::constant_scenario();
  base.grid.end = 1500.0;
  base.disturbance.kind = DisturbanceKind::SineOfS;
  base.disturbance.amplitude = 1.0;
  base.disturbance.freq = 0.01;
  base.disturbance.applies_to = DisturbanceTarget::FollowersOnly;

  const DssReport rep = dss_sweep(base, {10}, {0.0, 0.1, 0.2});
  CHECK(rep.cell(0, 0).sup_e1_inf > rep.cell(0, 1).sup_e1_inf);
  CHECK(rep.cell(0, 1).sup_e1_inf > rep.cell(0, 2).sup_e1_inf);
}
