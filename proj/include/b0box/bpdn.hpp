#pragma once

#include "b0box/region.hpp"
#include "b0box/solvers.hpp"

#include <cstdint>
#include <iosfwd>

namespace b0box {

/// Sparse recovery test problem b = A x_star + noise, with A having
/// orthonormal rows and x_star having k entries equal to +-1.
struct BpdnInstance {
  Eigen::MatrixXd a;
  Vector b;
  Vector x_star;
  double noise_std = 0.01;
  std::uint64_t seed = 0;
  Index sparsity = 0;

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

inline constexpr double kDefaultNoiseStd = 0.01;

/**
 * Draws an instance from Rng(seed) in this order:
 *   1. m*n standard normals filling a Gaussian matrix row by row;
 *   2. k support positions by a partial Fisher-Yates shuffle of 0..n-1;
 *   3. k signs, one uniform() each (< 0.5 means -1);
 *   4. m normals scaled by noise_std.
 * The rows are orthonormalized with a Householder QR of the transpose, with
 * column signs fixed so that R has a positive diagonal.
 */
BpdnInstance generate_bpdn(Index m, Index n, Index k, std::uint64_t seed, double noise_std = kDefaultNoiseStd);

/// f(x) = 0.5 ||A x - b||^2 with residual A x - b and Jacobian A.
RegularizedProblem as_problem(const BpdnInstance& inst);

double relative_error(const Vector& solution, const BpdnInstance& inst);

/**
 * Plain-text CSV layout:
 *   m,n,k,seed,noise_std
 *   <values>
 *   A
 *   <m rows of n values>
 *   b
 *   <m values>
 *   x_star
 *   <n values>
 * Numbers use 17 significant digits, so a round trip is exact.
 */
void write_instance_csv(std::ostream& out, const BpdnInstance& inst);
BpdnInstance read_instance_csv(std::istream& in);

}  // namespace b0box
