#pragma once

#include <string>
#include <vector>

namespace platoon {

// Built-in oracle suite backing the `validate` CLI command: integrator
// order and accuracy against analytic solutions, the space/time round trip,
// the reduced-chain exponential, L2 contraction, and cascade-bound
// soundness. step_scale coarsens the internal integration steps (diagnostic
// hook); kappa0 overrides the leader weight used by the chain checks.
struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

std::vector<CheckResult> run_validation_suite(double step_scale = 1.0,
                                              double kappa0 = 0.1);

}  // namespace platoon
