#include "platoon/vehicle_model.hpp"

#include "platoon/errors.hpp"

namespace platoon {

VehicleStateTime time_rhs(const VehicleStateTime& x, double u, double w,
                          const VehicleParams& p) {
  return {x.v, x.a + w, (-x.a + u) / p.tau};
}

VehicleStateSpace space_rhs(const VehicleStateSpace& x, double u, double w,
                            const VehicleParams& p) {
  if (x.v <= kVelocityFloor) {
    throw NonPositiveVelocity(-1, x.t);
  }
  return {1.0 / x.v, (x.a + w) / x.v, (-x.a + u) / (p.tau * x.v)};
}

}  // namespace platoon
