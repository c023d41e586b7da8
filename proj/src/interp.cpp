#include "platoon/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace platoon {

MonotoneCubic::MonotoneCubic(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
    : x_(x), y_(y), m_(x.size()) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("MonotoneCubic: need >= 2 matching nodes");
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) {
      throw std::invalid_argument("MonotoneCubic: abscissae not strictly increasing");
    }
  }

  Eigen::VectorXd h(n - 1), d(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  if (n == 2) {
    m_[0] = m_[1] = d[0];
    return;
  }

  // Interior slopes: weighted harmonic mean of adjacent secants, zero at
  // local extrema (Fritsch-Carlson).
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      m_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }

  // One-sided three-point endpoint slopes with the usual monotonicity clamps.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) {
      m = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(m) > 3.0 * std::abs(d0)) {
      m = 3.0 * d0;
    }
    return m;
  };
  m_[0] = end_slope(h[0], h[1], d[0], d[1]);
  m_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

double MonotoneCubic::operator()(double xq) const {
  const Eigen::Index n = x_.size();
  // Tolerate endpoint rounding from resampling grids.
  const double slack = 1e-9 * (1.0 + std::abs(x_[0]) + std::abs(x_[n - 1]));
  if (xq < x_[0] - slack || xq > x_[n - 1] + slack) {
    throw std::out_of_range("MonotoneCubic: query outside data range");
  }
  if (xq <= x_[0]) return y_[0];
  if (xq >= x_[n - 1]) return y_[n - 1];

  // Bracketing interval by binary search.
  Eigen::Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    (x_[mid] <= xq ? lo : hi) = mid;
  }

  const double h = x_[lo + 1] - x_[lo];
  const double t = (xq - x_[lo]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[lo + 1] + h11 * h * m_[lo + 1];
}

}  // namespace platoon
