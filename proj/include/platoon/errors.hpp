#pragma once

#include <stdexcept>
#include <string>

namespace platoon {

// Configuration file problems carry a file/line/key diagnostic in what().
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The spatial-domain description divides by the vehicle velocity; once a
// velocity reaches the floor the description has broken down and the run
// aborts with the offending vehicle and location.
struct NonPositiveVelocity : std::runtime_error {
  int vehicle;
  double where;
  NonPositiveVelocity(int vehicle_, double where_)
      : std::runtime_error("non-positive velocity: vehicle " +
                           std::to_string(vehicle_) + " at " +
                           std::to_string(where_)),
        vehicle(vehicle_),
        where(where_) {}
};

struct NonMonotonePosition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonMonotoneTime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonMonotoneHistory : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HistoryTooShort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHurwitz : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GainNotContractive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace platoon
