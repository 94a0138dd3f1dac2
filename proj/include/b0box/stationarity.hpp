#pragma once

#include "b0box/region.hpp"

#include <string>
#include <vector>

// Checkable necessary optimality conditions for
//   minimize 0.5 ||w - y||^2  subject to  y in C,
// used as test assertions on projection outputs.

namespace b0box {

enum class Condition {
  kUpperBound,   // y_i = x_i + radius requires y_i <= w_i
  kLowerBound,   // y_i = x_i - radius requires y_i >= w_i
  kInterior,     // otherwise y_i = w_i
  kFixedPoint,   // y is not a closest point to y - (y - w) / L
  kCoordinateMove,
  kSwap,
};

std::string to_string(Condition c);

struct Violation {
  Index index = -1;   // -1 when the condition is not tied to one coordinate
  Index partner = -1; // swap target for kSwap
  Condition condition;
  double residual = 0.0;
};

struct StationarityReport {
  bool basic_feasible = false;
  bool l_stationary_fixed_point = false;
  bool cw_minimum = false;
  std::vector<Violation> violations;
};

inline constexpr double kDefaultConditionTol = 1e-10;
inline constexpr double kFixedPointTol = 1e-10;

/// Thrown when a candidate handed to a checker is not in the region.
class InfeasibleCandidateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<Violation> basic_feasibility_violations(const Vector& y, const Vector& w, const SparseBoxRegion& region,
                                                    double tol = kDefaultConditionTol);
bool is_basic_feasible(const Vector& y, const Vector& w, const SparseBoxRegion& region,
                       double tol = kDefaultConditionTol);

/// Fixed-point form: y is L-stationary when it is a closest point of C to
/// v = y - (y - w) / L. Robust to ties in the projection of v.
bool is_l_stationary(const Vector& y, const Vector& w, const SparseBoxRegion& region, double lipschitz);

/// k-th largest magnitude, 1 <= k <= n.
double m_k(const Vector& y, Index k);

std::vector<Violation> cw_violations(const Vector& y, const Vector& w, const SparseBoxRegion& region,
                                     double tol = kDefaultConditionTol);
bool is_cw_minimum(const Vector& y, const Vector& w, const SparseBoxRegion& region,
                   double tol = kDefaultConditionTol);

/// All three checks; L-stationarity uses the given constant.
StationarityReport check_stationarity(const Vector& y, const Vector& w, const SparseBoxRegion& region,
                                      double lipschitz = 2.0, double tol = kDefaultConditionTol);

}  // namespace b0box
