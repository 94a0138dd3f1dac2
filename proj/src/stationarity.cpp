#include "b0box/stationarity.hpp"

#include "b0box/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace b0box {
namespace {

void require_candidate(const Vector& y, const Vector& w, const SparseBoxRegion& region) {
  require_same_length(y, region.dimension(), "y");
  require_same_length(w, region.dimension(), "w");
  require_finite(w, "w");
  if (!membership(y, region, 1e-12 * std::max(1.0, region.radius()))) {
    throw InfeasibleCandidateError("candidate point does not lie in the sparse box region");
  }
}

double clip(double v, double lo, double hi) { return std::max(lo, std::min(v, hi)); }

}  // namespace

std::string to_string(Condition c) {
  switch (c) {
    case Condition::kUpperBound: return "upper-bound";
    case Condition::kLowerBound: return "lower-bound";
    case Condition::kInterior: return "interior";
    case Condition::kFixedPoint: return "fixed-point";
    case Condition::kCoordinateMove: return "coordinate-move";
    case Condition::kSwap: return "swap";
  }
  return "unknown";
}

std::vector<Violation> basic_feasibility_violations(const Vector& y, const Vector& w, const SparseBoxRegion& region,
                                                    double tol) {
  require_candidate(y, w, region);
  const Vector& x = region.center();
  const double r = region.radius();
  const double boundary_tol = 1e-12 * std::max(1.0, r);
  const bool all_indices = count_nonzeros(y) < region.sparsity();

  std::vector<Violation> out;
  for (Index i = 0; i < y.size(); ++i) {
    if (!all_indices && y[i] == 0.0) continue;
    const bool at_upper = std::abs(y[i] - (x[i] + r)) <= boundary_tol;
    const bool at_lower = std::abs(y[i] - (x[i] - r)) <= boundary_tol;
    if (at_upper && at_lower) continue;  // zero radius pins y_i; any sign is admissible
    if (at_upper) {
      if (y[i] - w[i] > tol) out.push_back({i, -1, Condition::kUpperBound, y[i] - w[i]});
    } else if (at_lower) {
      if (w[i] - y[i] > tol) out.push_back({i, -1, Condition::kLowerBound, w[i] - y[i]});
    } else if (std::abs(y[i] - w[i]) > tol) {
      out.push_back({i, -1, Condition::kInterior, std::abs(y[i] - w[i])});
    }
  }
  return out;
}

bool is_basic_feasible(const Vector& y, const Vector& w, const SparseBoxRegion& region, double tol) {
  return basic_feasibility_violations(y, w, region, tol).empty();
}

namespace {

struct FixedPointGap {
  double to_candidate;
  double to_projection;
  bool holds() const {
    return std::abs(to_candidate - to_projection) <= kFixedPointTol * std::max(to_candidate, to_projection);
  }
};

FixedPointGap fixed_point_gap(const Vector& y, const Vector& w, const SparseBoxRegion& region, double lipschitz) {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("L-stationarity constant must be positive");
  require_candidate(y, w, region);
  const Vector v = y - (y - w) / lipschitz;
  return {std::sqrt(squared_distance(v, y)), std::sqrt(project_intersection(v, region).sq_distance)};
}

}  // namespace

bool is_l_stationary(const Vector& y, const Vector& w, const SparseBoxRegion& region, double lipschitz) {
  return fixed_point_gap(y, w, region, lipschitz).holds();
}

double m_k(const Vector& y, Index k) {
  if (k < 1 || k > y.size()) {
    throw std::out_of_range("m_k order " + std::to_string(k) + " outside [1, " + std::to_string(y.size()) + "]");
  }
  std::vector<double> mags(static_cast<std::size_t>(y.size()));
  for (Index i = 0; i < y.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(y[i]);
  auto kth = mags.begin() + (k - 1);
  std::nth_element(mags.begin(), kth, mags.end(), std::greater<>());
  return *kth;
}

std::vector<Violation> cw_violations(const Vector& y, const Vector& w, const SparseBoxRegion& region, double tol) {
  require_candidate(y, w, region);
  const Vector& x = region.center();
  const double r = region.radius();
  const Index n = y.size();

  // Best value of coordinate j over its box interval, and the resulting
  // change of 0.5 (w_j - .)^2 relative to the current y_j.
  Vector best(n);
  Vector move_gain(n);
  for (Index j = 0; j < n; ++j) {
    best[j] = clip(w[j], x[j] - r, x[j] + r);
    move_gain[j] = 0.5 * ((w[j] - y[j]) * (w[j] - y[j]) - (w[j] - best[j]) * (w[j] - best[j]));
  }

  std::vector<Violation> out;
  if (count_nonzeros(y) < region.sparsity()) {
    for (Index i = 0; i < n; ++i) {
      if (move_gain[i] > tol) out.push_back({i, -1, Condition::kCoordinateMove, move_gain[i]});
    }
    return out;
  }

  for (Index i = 0; i < n; ++i) {
    if (y[i] == 0.0) continue;
    if (move_gain[i] > tol) out.push_back({i, i, Condition::kSwap, move_gain[i]});
    // Zeroing y_i leaves the box when |x_i| > r: every such swap is vacuous.
    if (std::abs(x[i]) > r) continue;
    const double drop_gain = 0.5 * ((w[i] - y[i]) * (w[i] - y[i]) - w[i] * w[i]);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double gain = drop_gain + move_gain[j];
      if (gain > tol) out.push_back({i, j, Condition::kSwap, gain});
    }
  }
  return out;
}

bool is_cw_minimum(const Vector& y, const Vector& w, const SparseBoxRegion& region, double tol) {
  return cw_violations(y, w, region, tol).empty();
}

StationarityReport check_stationarity(const Vector& y, const Vector& w, const SparseBoxRegion& region, double lipschitz,
                                      double tol) {
  StationarityReport report;
  auto basic = basic_feasibility_violations(y, w, region, tol);
  auto cw = cw_violations(y, w, region, tol);
  report.basic_feasible = basic.empty();
  report.cw_minimum = cw.empty();
  const FixedPointGap gap = fixed_point_gap(y, w, region, lipschitz);
  report.l_stationary_fixed_point = gap.holds();
  report.violations = std::move(basic);
  report.violations.insert(report.violations.end(), cw.begin(), cw.end());
  if (!report.l_stationary_fixed_point) {
    report.violations.push_back({-1, -1, Condition::kFixedPoint, gap.to_candidate - gap.to_projection});
  }
  return report;
}

}  // namespace b0box
