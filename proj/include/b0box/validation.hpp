#pragma once

#include "b0box/region.hpp"

#include <string>

namespace b0box {

/// Outcome of cross-checking project_intersection on one instance.
struct InstanceCheck {
  double projected_sq_distance = 0.0;
  double oracle_sq_distance = 0.0;
  bool feasible = false;
  bool matches_oracle = false;
  bool basic_feasible = false;
  bool l_stationary = false;
  bool cw_minimum = false;

  bool passed() const { return feasible && matches_oracle && basic_feasible && l_stationary && cw_minimum; }
  /// Names of the failed checks, comma separated; empty when passed.
  std::string failures() const;
};

inline constexpr double kOracleMatchTolerance = 1e-12;

/// Projects w, then checks membership (tol 1e-12), the oracle distance
/// (1e-12 relative), basic feasibility (tol 1e-10), L-stationarity with
/// L = 2 and the CW-minimum property.
InstanceCheck check_instance(const Vector& w, const SparseBoxRegion& region);

}  // namespace b0box
