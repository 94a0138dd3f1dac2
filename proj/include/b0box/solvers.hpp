#pragma once

#include "b0box/quasi_newton.hpp"
#include "b0box/region.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace b0box {

/**
 * minimize f(x) + h(x) with h the indicator of {x : ||x||_0 <= sparsity}.
 *
 * `value` and `gradient` are required by the quasi-Newton trust-region
 * solver. The Levenberg-Marquardt variant instead needs the least-squares
 * structure f(x) = 0.5 ||F(x)||^2 through `residual` and the two Jacobian
 * products.
 */
struct RegularizedProblem {
  Index dimension = 0;
  Index sparsity = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;

  std::function<Vector(const Vector&)> residual;
  std::function<Vector(const Vector&, const Vector&)> jacobian_apply;            // (x, v) -> J(x) v
  std::function<Vector(const Vector&, const Vector&)> jacobian_transpose_apply;  // (x, u) -> J(x)' u

  /// Starting point; zero when empty.
  Vector x0;

  bool has_least_squares() const { return residual && jacobian_apply && jacobian_transpose_apply; }
};

struct SolverConfig {
  double epsilon = 1e-6;
  int max_outer = 500;
  int max_inner = 1000;
  double delta_init = 1.0;
  double eta1 = 0.1;
  double eta2 = 0.9;
  double gamma = 3.0;
  double sigma_min = 1e-8;
  QuasiNewtonKind quasi_newton = QuasiNewtonKind::kLsr1;
  int memory = 5;

  /// Throws std::invalid_argument unless 0 < eta1 <= eta2 < 1 < gamma,
  /// epsilon > 0, delta_init > 0 and the iteration limits are positive.
  void validate() const;
};

/// One row of the solver log. Values describe the iterate and radius the
/// step was computed from.
struct IterationRecord {
  int outer = 0;
  int inner = 0;
  double f = 0.0;
  double h = 0.0;
  double sqrt_xi1 = 0.0;
  double sqrt_xi = 0.0;
  double rho = 0.0;
  double delta = 0.0;
  double norm_x = 0.0;  // inf-norm
  double norm_s = 0.0;  // inf-norm
  double model_scale = 0.0;  // ||B_j|| for TR, initial R2 regularization for LMTR
  bool accepted = false;
};

/// q(s) = value_at_zero + gradient_at_zero' s + 0.5 s' H s.
struct QuadraticModel {
  double value_at_zero = 0.0;
  Vector gradient_at_zero;
  std::function<Vector(const Vector&)> hessian_apply;
};

struct R2Result {
  /// Final inner iterate x_j + s_j; an exact output of project_intersection
  /// (or the center when no inner step was accepted).
  Vector point;
  Vector step;
  double xi1 = 0.0;
  double xi = 0.0;
  int inner = 0;
  /// Set when the caller's criticality test fired on xi1; point is then the
  /// center and step is zero.
  bool critical = false;
};

/**
 * Adaptive-regularization proximal gradient on the model q over the sparse
 * box region centered at the current iterate.
 *
 * Each inner iteration projects x_j + s - grad q(s) / sigma onto the region
 * and takes the difference as the trial step t. xi_l is the decrease of the
 * regularized linear model, -(grad q(s)' t + 0.5 sigma ||t||^2); xi1 is xi_l
 * at the first inner iteration. A trial step is kept when the actual model
 * decrease is at least eta1 times the linear prediction; sigma is divided by
 * gamma when that ratio reaches eta2 and multiplied by gamma on rejection.
 * Stops once sqrt(xi_l) <= max(epsilon, 1e-2 sqrt(xi1)).
 *
 * `stop_on_xi1`, when given, is evaluated right after xi1 is known; if it
 * returns true the solve ends there with R2Result::critical set.
 */
R2Result r2_subsolve(const QuadraticModel& model, const SparseBoxRegion& region, double sigma,
                     const SolverConfig& config, const std::function<bool(double)>& stop_on_xi1 = {});

enum class SolverStatus { kCriticality, kSmallDecrease, kMaxOuter };

std::string_view to_string(SolverStatus status);

struct HistoryPoint {
  int evaluations = 0;  // cumulative gradient (TR) or residual (LMTR) evaluations
  double objective = 0.0;
};

struct SolverResult {
  Vector solution;
  std::vector<IterationRecord> records;
  SolverStatus status = SolverStatus::kMaxOuter;
  /// Outer iterations including the final one that detected criticality.
  int outer_iterations = 0;
  double xi1_initial = 0.0;
  double xi1_final = 0.0;
  double objective = 0.0;
  std::vector<HistoryPoint> history;
  /// The first three accepted steps.
  std::vector<Vector> first_steps;
};

/// Trust-region method with a limited-memory quasi-Newton model.
SolverResult tr_solve(const RegularizedProblem& problem, const SolverConfig& config);

/// Trust-region method with the Gauss-Newton model 0.5 ||J s + F||^2.
SolverResult lmtr_solve(const RegularizedProblem& problem, const SolverConfig& config);

}  // namespace b0box
