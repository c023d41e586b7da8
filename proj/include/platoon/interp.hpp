#pragma once

#include <Eigen/Dense>

namespace platoon {

// Fritsch-Carlson monotone cubic (PCHIP) interpolant on strictly increasing
// abscissae. Shape-preserving: monotone data yields a monotone interpolant,
// so inverting a strictly increasing map cannot create spurious overshoot.
class MonotoneCubic {
 public:
  MonotoneCubic(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

  double operator()(double xq) const;

  double x_min() const { return x_[0]; }
  double x_max() const { return x_[x_.size() - 1]; }
  bool covers(double xq) const { return xq >= x_min() && xq <= x_max(); }

 private:
  Eigen::VectorXd x_, y_, m_;  // nodes, values, node slopes
};

}  // namespace platoon
