#include "b0box/validation.hpp"

#include "b0box/oracle.hpp"
#include "b0box/projection.hpp"
#include "b0box/stationarity.hpp"

#include <algorithm>
#include <cmath>

namespace b0box {

std::string InstanceCheck::failures() const {
  std::string out;
  auto add = [&out](bool ok, const char* name) {
    if (ok) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(feasible, "membership");
  add(matches_oracle, "oracle");
  add(basic_feasible, "basic-feasible");
  add(l_stationary, "l-stationary");
  add(cw_minimum, "cw-minimum");
  return out;
}

InstanceCheck check_instance(const Vector& w, const SparseBoxRegion& region) {
  InstanceCheck check;
  const ProjectionResult proj = project_intersection(w, region);
  const OracleResult oracle = enumerate_projection(w, region);
  check.projected_sq_distance = proj.sq_distance;
  check.oracle_sq_distance = oracle.best_sq_distance;
  check.feasible = membership(proj.point, region, 1e-12);
  const double a = proj.sq_distance;
  const double b = oracle.best_sq_distance;
  check.matches_oracle = std::abs(a - b) <= kOracleMatchTolerance * std::max(std::abs(a), std::abs(b));
  if (!check.feasible) return check;
  check.basic_feasible = is_basic_feasible(proj.point, w, region, kDefaultConditionTol);
  check.l_stationary = is_l_stationary(proj.point, w, region, 2.0);
  check.cw_minimum = is_cw_minimum(proj.point, w, region, kDefaultConditionTol);
  return check;
}

}  // namespace b0box
