#include "b0box/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace b0box {
namespace {

bool relatively_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (Index i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

OracleResult enumerate_projection(const Vector& w, const SparseBoxRegion& region) {
  const Index n = region.dimension();
  const Index k = region.sparsity();
  require_same_length(w, n, "w");
  require_finite(w, "w");
  if (n > kOracleMaxDimension) {
    throw OracleSizeError("oracle dimension " + std::to_string(n) + " exceeds " + std::to_string(kOracleMaxDimension));
  }
  if (binomial(n, k) > kOracleMaxPieces) {
    throw OracleSizeError("oracle would enumerate " + std::to_string(binomial(n, k)) + " supports");
  }

  const Vector& x = region.center();
  const double r = region.radius();
  // clipping rounds, so |y_i - x_i| can exceed r by an ulp
  const double box_tol = 1e-12 * std::max(1.0, r);
  std::vector<bool> large(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) large[static_cast<std::size_t>(i)] = std::abs(x[i]) > r;

  // Candidates within tolerance of the running best; re-filtered at the end
  // because the best can still drift down by less than the tolerance.
  std::vector<OracleMinimizer> near_best;
  OracleResult result;
  result.best_sq_distance = std::numeric_limits<double>::infinity();

  // Lexicographic walk over k-combinations of {0, ..., n-1}.
  IndexSet support(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) support[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<bool> in_support(static_cast<std::size_t>(n), false);
    for (Index i : support) in_support[static_cast<std::size_t>(i)] = true;

    bool covers_large = true;
    for (Index i = 0; i < n && covers_large; ++i) {
      covers_large = in_support[static_cast<std::size_t>(i)] || !large[static_cast<std::size_t>(i)];
    }
    if (covers_large) {
      ++result.pieces_examined;
      Vector y = Vector::Zero(n);
      bool in_box = true;
      double dist = 0.0;
      for (Index i = 0; i < n; ++i) {
        if (in_support[static_cast<std::size_t>(i)]) {
          const double lo = x[i] - r;
          const double hi = x[i] + r;
          y[i] = w[i] < lo ? lo : (w[i] > hi ? hi : w[i]);
        }
        in_box = in_box && std::abs(y[i] - x[i]) <= r + box_tol;
        dist += (w[i] - y[i]) * (w[i] - y[i]);
      }
      if (in_box) {
        if (dist < result.best_sq_distance &&
            !relatively_equal(dist, result.best_sq_distance, kOracleTieTolerance)) {
          near_best.clear();
        }
        result.best_sq_distance = std::min(result.best_sq_distance, dist);
        if (relatively_equal(dist, result.best_sq_distance, kOracleTieTolerance)) {
          near_best.push_back({support, std::move(y), dist});
        }
      }
    }

    // Advance to the next combination.
    Index pos = k - 1;
    while (pos >= 0 && support[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++support[static_cast<std::size_t>(pos)];
    for (Index j = pos + 1; j < k; ++j) support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
  }

  // x itself lies on a covering piece, so this cannot be empty.
  if (near_best.empty()) throw std::logic_error("oracle found no feasible piece");

  for (auto& c : near_best) {
    if (relatively_equal(c.sq_distance, result.best_sq_distance, kOracleTieTolerance)) {
      result.minimizers.push_back(std::move(c));
    }
  }
  return result;
}

}  // namespace b0box
