#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace b0box {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sorted list of 0-based coordinate indices.
using IndexSet = std::vector<Index>;

/// Thrown when a vector length does not match the region or another operand.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a region's center, radius or sparsity level is inconsistent.
class RegionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown on NaN or infinite input data.
class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/**
 * The set C = {y : ||y||_0 <= k} ∩ {y : ||y - x||_inf <= radius}.
 *
 * The center x must itself be k-sparse, so x always belongs to C and C is
 * never empty. Construction validates every invariant; a constructed region
 * is immutable.
 */
class SparseBoxRegion {
 public:
  SparseBoxRegion(Vector center, double radius, Index sparsity);

  const Vector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  Index sparsity() const noexcept { return sparsity_; }
  Index dimension() const noexcept { return center_.size(); }

  /// Same sparsity level, different center and radius.
  SparseBoxRegion recentered(Vector center, double radius) const {
    return SparseBoxRegion(std::move(center), radius, sparsity_);
  }

 private:
  Vector center_;
  double radius_;
  Index sparsity_;
};

/// Nonzero components of the center split by |x_i| <= radius (small) and
/// |x_i| > radius (large). Every large index is forced into any support that
/// meets the box.
struct SupportSplit {
  IndexSet small;
  IndexSet large;
};

struct ProjectionResult {
  Vector point;
  IndexSet support;
  double sq_distance = 0.0;
};

/// Number of exactly-nonzero entries.
Index count_nonzeros(const Vector& v);

/// Indices of exactly-nonzero entries, ascending.
IndexSet support_of(const Vector& v);

/// ||a - b||_2^2, accumulated in index order.
double squared_distance(const Vector& a, const Vector& b);

void require_same_length(const Vector& v, Index n, const char* what);
void require_finite(const Vector& v, const char* what);

}  // namespace b0box
