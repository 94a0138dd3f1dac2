#pragma once

#include "b0box/region.hpp"

#include <deque>
#include <string_view>

namespace b0box {

enum class QuasiNewtonKind { kLbfgs, kLsr1 };

std::string_view to_string(QuasiNewtonKind kind);

/**
 * Limited-memory Hessian approximation B built from the most recent
 * (step, gradient difference) pairs on top of scaling * I.
 *
 * Products use the unrolled recursive form: for each retained pair the
 * vectors needed by the rank-one or rank-two correction are cached, so
 * apply() costs O(memory * n). The cache is rebuilt when the oldest pair is
 * evicted.
 *
 * Pair acceptance:
 *   L-BFGS skips pairs with s'g <= 1e-8 ||s|| ||g||, keeping B positive definite.
 *   L-SR1 skips pairs with |s'(g - Bs)| <= 1e-8 ||s|| ||g - Bs||.
 * A skipped pair leaves the operator untouched.
 */
class QuasiNewtonOperator {
 public:
  struct Pair {
    Vector step;
    Vector grad_diff;
  };

  QuasiNewtonOperator(QuasiNewtonKind kind, Index dimension, int memory = 5, double scaling = 1.0);

  /// Returns true when the pair was accepted.
  bool update(const Vector& step, const Vector& grad_diff);

  Vector apply(const Vector& v) const;

  /// Power-iteration estimate of the spectral norm; stops at relative change
  /// 1e-4 or after 100 iterations.
  double norm_estimate() const;

  QuasiNewtonKind kind() const noexcept { return kind_; }
  Index dimension() const noexcept { return dimension_; }
  int memory() const noexcept { return memory_; }
  double scaling() const noexcept { return scaling_; }
  const std::deque<Pair>& pairs() const noexcept { return pairs_; }

  /// Dense n x n matrix of the operator, for small-scale checks.
  Eigen::MatrixXd to_dense() const;

 private:
  // Per-pair cache. L-BFGS: B_i s_i and s_i' B_i s_i, with B_i the operator
  // before pair i. L-SR1: u_i = g_i - B_i s_i and u_i' s_i.
  struct Term {
    Vector direction;
    double denominator;
  };

  bool acceptable(const Vector& step, const Vector& grad_diff, const Vector& b_step) const;
  Vector apply_terms(const Vector& v, std::size_t count) const;
  void rebuild();

  QuasiNewtonKind kind_;
  Index dimension_;
  int memory_;
  double scaling_;
  std::deque<Pair> pairs_;
  std::deque<Term> terms_;
};

}  // namespace b0box
