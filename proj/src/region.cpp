#include "b0box/region.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace b0box {

SparseBoxRegion::SparseBoxRegion(Vector center, double radius, Index sparsity)
    : center_(std::move(center)), radius_(radius), sparsity_(sparsity) {
  const Index n = center_.size();
  if (n < 1) throw RegionError("region dimension must be at least 1");
  require_finite(center_, "region center");
  if (!std::isfinite(radius_)) throw NonFiniteError("region radius is not finite");
  if (radius_ < 0.0) throw RegionError("region radius must be nonnegative, got " + std::to_string(radius_));
  if (sparsity_ < 0 || sparsity_ > n) {
    throw RegionError("sparsity level " + std::to_string(sparsity_) + " outside [0, " + std::to_string(n) + "]");
  }
  const Index nnz = count_nonzeros(center_);
  if (nnz > sparsity_) {
    throw RegionError("region center has " + std::to_string(nnz) + " nonzeros but sparsity level is " +
                      std::to_string(sparsity_));
  }
}

Index count_nonzeros(const Vector& v) {
  Index count = 0;
  for (Index i = 0; i < v.size(); ++i) count += (v[i] != 0.0);
  return count;
}

IndexSet support_of(const Vector& v) {
  IndexSet s;
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) s.push_back(i);
  }
  return s;
}

double squared_distance(const Vector& a, const Vector& b) {
  double acc = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void require_same_length(const Vector& v, Index n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                         std::to_string(n));
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw NonFiniteError(std::string(what) + " contains a non-finite entry");
}

}  // namespace b0box
