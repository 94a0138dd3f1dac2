#pragma once

#include "b0box/region.hpp"

#include <stdexcept>
#include <vector>

namespace b0box {

/// Thrown when exhaustive enumeration would be too expensive.
class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct OracleMinimizer {
  IndexSet support;
  Vector point;
  double sq_distance;
};

struct OracleResult {
  double best_sq_distance = 0.0;
  /// Every enumerated piece whose distance ties the best within 1e-12
  /// relative, in lexicographic order of the supports.
  std::vector<OracleMinimizer> minimizers;
  /// Number of supports examined (those containing every large index).
  std::size_t pieces_examined = 0;
};

inline constexpr Index kOracleMaxDimension = 25;
inline constexpr double kOracleMaxPieces = 2.0e6;
inline constexpr double kOracleTieTolerance = 1e-12;

/// Binomial coefficient as a double (exact well past the oracle limits).
double binomial(Index n, Index k);

/**
 * Brute-force projection onto the sparse box region.
 *
 * Walks every support of size k in lexicographic order, clips w to the box
 * on that support, zeroes the rest, and keeps the closest feasible points.
 * Supports missing a large center index never meet the box and are skipped.
 * This is a reference implementation with no shared code path with
 * project_intersection; it is only meant for small n.
 */
OracleResult enumerate_projection(const Vector& w, const SparseBoxRegion& region);

}  // namespace b0box
