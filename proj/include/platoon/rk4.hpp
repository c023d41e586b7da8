#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "platoon/errors.hpp"

namespace platoon {

// Uniform integration grid: node(k) = start + k * step, k = 0..steps().
// The node formula is fixed (no accumulation) so grids are bit-reproducible.
struct GridSpec {
  double start = 0.0;
  double end = 1000.0;
  double step = 0.1;

  Eigen::Index steps() const {
    return static_cast<Eigen::Index>(std::llround((end - start) / step));
  }
  double node(Eigen::Index k) const { return start + static_cast<double>(k) * step; }
  Eigen::Index size() const { return steps() + 1; }

  Eigen::VectorXd nodes() const {
    Eigen::VectorXd g(size());
    for (Eigen::Index k = 0; k < g.size(); ++k) g[k] = node(k);
    return g;
  }
};

namespace detail {
template <class State>
bool state_is_finite(const State& y) {
  if constexpr (std::is_floating_point_v<State>) {
    return std::isfinite(y);
  } else {
    return y.allFinite();
  }
}
}  // namespace detail

// One classical 4th-order Runge-Kutta step for y' = f(x, y).
template <class State, class Field>
State rk4_step(Field&& f, double x, const State& y, double h) {
  const State k1 = f(x, y);
  const State k2 = f(x + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = f(x + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = f(x + h, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Scalar overload (State = double).
template <class Field>
double rk4_step(Field&& f, double x, double y, double h) {
  const double k1 = f(x, y);
  const double k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = f(x + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Fixed-step RK4 over the whole grid; returns the state at every node
// (including the initial one). Throws NonFinite if any step produces a
// non-finite component. No adaptive stepping.
template <class State, class Field>
std::vector<State> integrate_rk4(Field&& f, State y0, const GridSpec& grid) {
  std::vector<State> out;
  out.reserve(static_cast<std::size_t>(grid.size()));
  out.push_back(y0);
  State y = y0;
  const Eigen::Index n = grid.steps();
  for (Eigen::Index k = 0; k < n; ++k) {
    y = rk4_step(f, grid.node(k), y, grid.step);
    if (!detail::state_is_finite(y)) {
      throw NonFinite("integration produced a non-finite state at x = " +
                      std::to_string(grid.node(k + 1)));
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace platoon
