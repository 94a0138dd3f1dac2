#include "b0box/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <iterator>
#include <stdexcept>
#include <utility>

namespace b0box {
namespace {

struct Scored {
  double score;
  Index index;
};

// Strict total order: larger score first, then lower index. Because it is
// total, the set of the first m elements is unique and matches what a stable
// descending sort would produce.
inline bool ranks_before(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.index < b.index;
}

// Moves the m best-ranked entries to the front and returns their indices,
// ascending.
IndexSet select_best(std::vector<Scored>& scored, std::size_t m) {
  m = std::min(m, scored.size());
  if (m < scored.size()) {
    std::nth_element(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(m), scored.end(), ranks_before);
  }
  IndexSet chosen;
  chosen.reserve(m);
  for (std::size_t i = 0; i < m; ++i) chosen.push_back(scored[i].index);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

bool inside_box(const Vector& w, const SparseBoxRegion& region) {
  const Vector& x = region.center();
  const double r = region.radius();
  for (Index i = 0; i < w.size(); ++i) {
    if (!(std::abs(w[i] - x[i]) <= r)) return false;
  }
  return true;
}

}  // namespace

Vector project_box(const Vector& w, const SparseBoxRegion& region) {
  require_same_length(w, region.dimension(), "w");
  require_finite(w, "w");
  const Vector& x = region.center();
  const double r = region.radius();
  Vector y(w.size());
  for (Index i = 0; i < w.size(); ++i) y[i] = std::max(x[i] - r, std::min(w[i], x[i] + r));
  return y;
}

Vector project_piece(const Vector& w, const IndexSet& piece) {
  Vector y = Vector::Zero(w.size());
  for (Index i : piece) {
    if (i < 0 || i >= w.size()) {
      throw std::out_of_range("piece index " + std::to_string(i) + " outside [0, " + std::to_string(w.size()) + ")");
    }
    y[i] = w[i];
  }
  return y;
}

ProjectionResult project_sparse(const Vector& w, Index k) {
  const Index n = w.size();
  if (k < 0 || k > n) {
    throw std::out_of_range("sparsity level " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  }
  require_finite(w, "w");
  std::vector<Scored> scored(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) scored[static_cast<std::size_t>(i)] = {std::abs(w[i]), i};

  ProjectionResult result;
  result.support = select_best(scored, static_cast<std::size_t>(k));
  result.point = project_piece(w, result.support);
  result.sq_distance = squared_distance(w, result.point);
  return result;
}

SupportSplit classify_support(const SparseBoxRegion& region) {
  SupportSplit split;
  const Vector& x = region.center();
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    (std::abs(x[i]) <= region.radius() ? split.small : split.large).push_back(i);
  }
  return split;
}

ProjectionResult project_intersection(const Vector& w, const SparseBoxRegion& region) {
  const Index n = region.dimension();
  require_same_length(w, n, "w");
  require_finite(w, "w");
  const Index k = region.sparsity();

  // The plain truncation is only safe when no center component is large:
  // otherwise it may drop a forced index and leave the box.
  const IndexSet forced = classify_support(region).large;
  if (forced.empty() && inside_box(w, region)) return project_sparse(w, k);

  Vector y = project_box(w, region);

  ProjectionResult result;
  if (static_cast<Index>(forced.size()) == k) {
    result.support = forced;
  } else {
    std::vector<Scored> free;
    free.reserve(static_cast<std::size_t>(n) - forced.size());
    auto next_forced = forced.begin();
    for (Index i = 0; i < n; ++i) {
      if (next_forced != forced.end() && *next_forced == i) {
        ++next_forced;
        continue;
      }
      const double gap = w[i] - y[i];
      free.push_back({w[i] * w[i] - gap * gap, i});
    }
    IndexSet chosen = select_best(free, static_cast<std::size_t>(k) - forced.size());
    result.support.reserve(static_cast<std::size_t>(k));
    std::merge(forced.begin(), forced.end(), chosen.begin(), chosen.end(), std::back_inserter(result.support));
  }
  result.point = project_piece(y, result.support);
  result.sq_distance = squared_distance(w, result.point);
  return result;
}

bool membership(const Vector& y, const SparseBoxRegion& region, double tol) {
  if (y.size() != region.dimension()) return false;
  if (count_nonzeros(y) > region.sparsity()) return false;
  const Vector& x = region.center();
  for (Index i = 0; i < y.size(); ++i) {
    if (!(std::abs(y[i] - x[i]) <= region.radius() + tol)) return false;
  }
  return true;
}

}  // namespace b0box
