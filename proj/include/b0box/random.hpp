#pragma once

#include "b0box/region.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace b0box {

/**
 * Seeded random stream with a fixed, documented layout so that generated
 * data is identical across standard libraries:
 *
 *   - raw bits come from std::mt19937_64 (fully specified by the standard);
 *   - uniform() takes the top 53 bits of one draw and scales by 2^-53;
 *   - normal() is Box-Muller on two uniform() draws (u1 mapped to (0, 1]),
 *     returning the cosine branch and caching the sine branch for the next
 *     call;
 *   - index(n) rejects draws >= the largest multiple of n, then reduces
 *     modulo n.
 *
 * The std:: distributions are avoided because their algorithms are left to
 * the implementation.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  Index between(Index lo, Index hi) { return lo + static_cast<Index>(index(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin(double p_true) { return uniform() < p_true; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct ProjectionInstance {
  Vector w;
  SparseBoxRegion region;
  std::string regime;  // e.g. "small/outside"
};

/**
 * Random projection problem with n in [1, max_n], k in [0, n], mixing the
 * center regimes (zero, only small, mixed, only large components) with w
 * inside or outside the box. About one instance in eight is drawn on a
 * half-integer grid so that exact ties occur.
 */
ProjectionInstance random_projection_instance(Rng& rng, Index max_n);

}  // namespace b0box
