#include "platoon/stability_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "platoon/errors.hpp"

namespace platoon {

double compose_cascade_bound(const IssBoundSpec& spec, double x0_bound,
                             double w_bound) {
  if (spec.gamma_bar >= 1.0) {
    throw GainNotContractive("cascade gain gamma_bar must be < 1");
  }
  if (spec.C < 1.0 || spec.lambda <= 0.0 || spec.gamma_bar < 0.0 ||
      spec.sigma_bar < 0.0) {
    throw std::invalid_argument("invalid ISS bound parameters");
  }
  return (spec.C * x0_bound + spec.sigma_bar * w_bound) / (1.0 - spec.gamma_bar);
}

CascadeResult simulate_linear_cascade(
    double gamma, int n, const std::function<double(int, double)>& w,
    const Eigen::VectorXd& x0, const GridSpec& grid) {
  if (n < 1 || x0.size() != n) {
    throw std::invalid_argument("cascade needs n >= 1 matching initial states");
  }
  auto rhs = [&](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    Eigen::VectorXd dx(n);
    dx[0] = -x[0] + w(0, t);
    for (int i = 1; i < n; ++i) {
      dx[i] = -x[i] + gamma * x[i - 1] + w(i, t);
    }
    return dx;
  };

  CascadeResult res;
  res.sup_norm = x0.cwiseAbs();
  Eigen::VectorXd x = x0;
  for (Eigen::Index k = 0; k < grid.steps(); ++k) {
    x = rk4_step(rhs, grid.node(k), x, grid.step);
    if (!x.allFinite()) {
      throw NonFinite("linear cascade produced a non-finite state");
    }
    res.sup_norm = res.sup_norm.cwiseMax(x.cwiseAbs());
  }
  res.final_state = x;
  return res;
}

ChainRun simulate_reduced_chain(double kappa, double kappa0,
                                const Eigen::VectorXd& delta_init,
                                const GridSpec& grid) {
  if (!(kappa > 0.0)) throw std::invalid_argument("chain needs kappa > 0");
  const Eigen::Index n = delta_init.size();
  auto rhs = [&](double, const Eigen::VectorXd& d) -> Eigen::VectorXd {
    Eigen::VectorXd dd(n);
    dd[0] = -d[0] / kappa;
    for (Eigen::Index i = 1; i < n; ++i) {
      dd[i] = (-d[i] + (1.0 - kappa0) * d[i - 1]) / kappa;
    }
    return dd;
  };

  ChainRun run;
  run.kappa = kappa;
  run.kappa0 = kappa0;
  run.grid = grid.nodes();
  run.delta.resize(n, run.grid.size());
  run.delta.col(0) = delta_init;
  Eigen::VectorXd d = delta_init;
  for (Eigen::Index k = 0; k < grid.steps(); ++k) {
    d = rk4_step(rhs, grid.node(k), d, grid.step);
    run.delta.col(k + 1) = d;
  }
  return run;
}

bool L2Report::all_within(double tol) const {
  for (Eigen::Index i = 0; i < ratios.size(); ++i) {
    if (ratios[i] < 0.0) continue;  // exact-zero sentinel
    if (ratios[i] > bound + tol) return false;
  }
  return true;
}

L2Report check_l2_contraction(const ChainRun& run) {
  const Eigen::Index n = run.delta.rows();
  for (Eigen::Index i = 1; i < n; ++i) {
    if (run.delta(i, 0) != 0.0) {
      throw HypothesisViolated("followers must start with zero timing error");
    }
  }

  L2Report rep;
  rep.bound = (1.0 - run.kappa0) * (1.0 - run.kappa0);
  rep.integrals.setZero(n);
  const Eigen::Index m = run.grid.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k + 1 < m; ++k) {
      const double f0 = run.delta(i, k) * run.delta(i, k);
      const double f1 = run.delta(i, k + 1) * run.delta(i, k + 1);
      acc += 0.5 * (f0 + f1) * (run.grid[k + 1] - run.grid[k]);
    }
    rep.integrals[i] = acc;
  }
  rep.ratios.setConstant(n - 1, -1.0);
  for (Eigen::Index i = 1; i < n; ++i) {
    if (rep.integrals[i - 1] > 0.0) {
      rep.ratios[i - 1] = rep.integrals[i] / rep.integrals[i - 1];
    }
  }
  return rep;
}

const DssCell& DssReport::cell(int n_index, int kappa0_index) const {
  return cells.at(static_cast<std::size_t>(kappa0_index) * n_list.size() +
                  static_cast<std::size_t>(n_index));
}

double DssReport::tail_increase(int kappa0_index) const {
  const int last = static_cast<int>(n_list.size()) - 1;
  const DssCell& a = cell(last - 1, kappa0_index);
  const DssCell& b = cell(last, kappa0_index);
  return b.sup_e1_inf / a.sup_e1_inf - 1.0;
}

bool DssReport::saturated(int kappa0_index) const {
  return tail_increase(kappa0_index) < saturation_tol;
}

double DssReport::growth_exponent(int kappa0_index) const {
  // Least-squares slope of log(sup_e1) vs log(N).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n_list.size());
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    const double lx = std::log(static_cast<double>(n_list[j]));
    const double ly = std::log(cell(static_cast<int>(j), kappa0_index).sup_e1_inf);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::string DssReport::summary() const {
  std::ostringstream os;
  os << "disturbance string stability sweep\n";
  for (std::size_t j = 0; j < kappa0_list.size(); ++j) {
    const int ji = static_cast<int>(j);
    os << "  kappa0 = " << kappa0_list[j] << ": sup|e1|";
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
      os << " N=" << n_list[ni] << ":" << cell(static_cast<int>(ni), ji).sup_e1_inf;
    }
    os << "  tail increase " << tail_increase(ji) * 100.0 << "%"
       << "  growth exponent " << growth_exponent(ji)
       << (saturated(ji) ? "  [saturated]" : "  [growing]") << "\n";
  }
  return os.str();
}

DssReport dss_sweep(const ScenarioConfig& base, const std::vector<int>& n_list,
                    const std::vector<double>& kappa0_list) {
  DssReport rep;
  rep.n_list = n_list;
  rep.kappa0_list = kappa0_list;
  rep.cells.resize(n_list.size() * kappa0_list.size());

  // Cells are independent sequential runs; results land in preassigned
  // slots, so the report does not depend on scheduling order.
  std::vector<std::future<void>> jobs;
  jobs.reserve(rep.cells.size());
  for (std::size_t j = 0; j < kappa0_list.size(); ++j) {
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
      DssCell& cell = rep.cells[j * n_list.size() + ni];
      cell.n = n_list[ni];
      cell.kappa0 = kappa0_list[j];
      jobs.push_back(std::async(std::launch::async, [&base, &cell]() {
        try {
          ScenarioConfig cfg = base;
          cfg.n_followers = cell.n;
          cfg.policy.kappa0 = cell.kappa0;
          cfg.ic_spread = IcSpread{};
          const SupNorms norms = run_spatial_sup_norms(cfg);
          cell.sup_e1_inf = norms.e1_inf.maxCoeff();
          cell.sup_delta_inf = norms.delta_inf.maxCoeff();
          cell.ok = true;
        } catch (const std::exception& e) {
          cell.ok = false;
          cell.error = e.what();
        }
      }));
    }
  }
  for (auto& job : jobs) job.get();
  return rep;
}

}  // namespace platoon
