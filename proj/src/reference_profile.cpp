#include "platoon/reference_profile.hpp"

#include <cmath>
#include <numbers>

#include "platoon/errors.hpp"
#include "platoon/rk4.hpp"

namespace platoon {

ReferenceProfile ReferenceProfile::constant(double v, double vmin, double vmax) {
  ReferenceProfile p;
  p.kind = ProfileKind::Constant;
  p.v_const = v;
  p.v_min = vmin;
  p.v_max = vmax;
  p.validate();
  return p;
}

ReferenceProfile ReferenceProfile::cosine_dip(double vb, double dv, double sa,
                                              double sb, double vmin, double vmax) {
  ReferenceProfile p;
  p.kind = ProfileKind::CosineDip;
  p.v_base = vb;
  p.depth = dv;
  p.s_begin = sa;
  p.s_end = sb;
  p.v_min = vmin;
  p.v_max = vmax;
  p.validate();
  return p;
}

void ReferenceProfile::validate() const {
  if (!(v_min > 0.0) || !(v_max >= v_min)) {
    throw ConfigError("[reference] requires 0 < v_min <= v_max");
  }
  if (kind == ProfileKind::Constant) {
    if (v_const < v_min || v_const > v_max) {
      throw ConfigError("[reference] v_const outside [v_min, v_max]");
    }
    return;
  }
  if (!(s_end > s_begin)) {
    throw ConfigError("[reference] cosine dip requires s_end > s_begin");
  }
  if (depth < 0.0) {
    throw ConfigError("[reference] cosine dip requires depth >= 0");
  }
  // Dip extremum is v_base - 2*depth at the midpoint.
  if (v_base > v_max || v_base - 2.0 * depth < v_min) {
    throw ConfigError("[reference] cosine dip leaves [v_min, v_max]");
  }
}

namespace {

bool in_dip(const ReferenceProfile& p, double s) {
  return p.kind == ProfileKind::CosineDip && s >= p.s_begin && s <= p.s_end;
}

}  // namespace

VrefDerivs eval_vref_derivs(const ReferenceProfile& p, double s, double piece_hint) {
  if (p.kind == ProfileKind::Constant) {
    return {p.v_const, 0.0, 0.0};
  }
  if (!in_dip(p, piece_hint)) {
    return {p.v_base, 0.0, 0.0};
  }
  const double omega = 2.0 * std::numbers::pi / (p.s_end - p.s_begin);
  const double phase = omega * (s - p.s_begin);
  const double c = std::cos(phase), sn = std::sin(phase);
  return {p.v_base - p.depth * (1.0 - c),
          -p.depth * omega * sn,
          -p.depth * omega * omega * c};
}

VrefDerivs eval_vref_derivs(const ReferenceProfile& p, double s) {
  return eval_vref_derivs(p, s, s);
}

double eval_vref(const ReferenceProfile& p, double s, double piece_hint) {
  return eval_vref_derivs(p, s, piece_hint).v;
}

double eval_vref(const ReferenceProfile& p, double s) { return eval_vref(p, s, s); }

InvVrefDerivs eval_inv_vref_derivs(const ReferenceProfile& p, double s,
                                   double piece_hint) {
  const VrefDerivs r = eval_vref_derivs(p, s, piece_hint);
  const double v2 = r.v * r.v;
  // d/ds (1/v) = -v'/v^2,  d^2/ds^2 (1/v) = -v''/v^2 + 2 v'^2/v^3.
  return {1.0 / r.v, -r.dv / v2, -r.ddv / v2 + 2.0 * r.dv * r.dv / (v2 * r.v)};
}

InvVrefDerivs eval_inv_vref_derivs(const ReferenceProfile& p, double s) {
  return eval_inv_vref_derivs(p, s, s);
}

double eval_tref(const ReferenceProfile& p, double s_start, double s, double step) {
  if (s == s_start) return 0.0;
  GridSpec grid{s_start, s, step};
  if (grid.steps() < 1) grid.step = s - s_start;
  double t = 0.0;
  for (Eigen::Index k = 0; k < grid.steps(); ++k) {
    const double hint = grid.node(k) + 0.5 * grid.step;
    t = rk4_step([&](double sigma, double) { return 1.0 / eval_vref(p, sigma, hint); },
                 grid.node(k), t, grid.step);
  }
  return t;
}

double equilibrium_accel(const ReferenceProfile& p, double s) {
  const VrefDerivs r = eval_vref_derivs(p, s);
  return r.v * r.dv;
}

std::string to_string(ProfileKind k) {
  return k == ProfileKind::Constant ? "constant" : "cosine_dip";
}

}  // namespace platoon
