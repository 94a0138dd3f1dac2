#include "b0box/solvers.hpp"

#include "b0box/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace b0box {
namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

double indicator(const Vector& x, Index sparsity) {
  return count_nonzeros(x) <= sparsity ? 0.0 : std::numeric_limits<double>::infinity();
}

void require_finite_value(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFiniteError(std::string(what) + " is not finite");
}

Vector starting_point(const RegularizedProblem& problem) {
  if (problem.dimension < 1) throw std::invalid_argument("problem dimension must be positive");
  if (problem.sparsity < 0 || problem.sparsity > problem.dimension) {
    throw std::invalid_argument("problem sparsity level outside [0, n]");
  }
  Vector x = problem.x0.size() == 0 ? Vector::Zero(problem.dimension) : problem.x0;
  require_same_length(x, problem.dimension, "x0");
  require_finite(x, "x0");
  if (count_nonzeros(x) > problem.sparsity) throw RegionError("starting point is not sparse enough");
  return x;
}

// sqrt(xi1) <= eps + eps sqrt(xi1_0); on the first outer iteration xi1_0 is
// xi1 itself.
std::function<bool(double)> criticality_test(double epsilon, std::optional<double> xi1_initial) {
  return [epsilon, xi1_initial](double xi1) {
    const double reference = xi1_initial.value_or(xi1);
    return std::sqrt(xi1) <= epsilon + epsilon * std::sqrt(reference);
  };
}

// Shared outer-loop bookkeeping: radius update, step log and history.
struct OuterLoop {
  const SolverConfig& config;
  SolverResult result;
  double delta;
  std::optional<double> xi1_initial;

  explicit OuterLoop(const SolverConfig& c) : config(c), delta(c.delta_init) {}

  // Returns true when the solve should stop before computing rho.
  bool note_subsolve(const R2Result& r2, int outer) {
    if (!xi1_initial) xi1_initial = r2.xi1;
    result.xi1_initial = *xi1_initial;
    result.xi1_final = r2.xi1;
    result.outer_iterations = outer;
    if (r2.critical) {
      result.status = SolverStatus::kCriticality;
      return true;
    }
    return false;
  }

  void update_radius(double rho, double step_norm) {
    if (rho >= config.eta2) {
      delta = std::max(delta, config.gamma * step_norm);
    } else if (rho < config.eta1) {
      delta *= 0.5;
    }
  }

  void note_accepted_step(const Vector& step) {
    if (result.first_steps.size() < 3) result.first_steps.push_back(step);
  }
};

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(0.0 < eta1 && eta1 <= eta2 && eta2 < 1.0 && 1.0 < gamma)) {
    throw std::invalid_argument("require 0 < eta1 <= eta2 < 1 < gamma");
  }
  if (!(delta_init > 0.0)) throw std::invalid_argument("initial trust-region radius must be positive");
  if (!(sigma_min > 0.0)) throw std::invalid_argument("sigma_min must be positive");
  if (max_outer < 1 || max_inner < 1) throw std::invalid_argument("iteration limits must be positive");
  if (memory < 1) throw std::invalid_argument("quasi-Newton memory must be positive");
}

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kCriticality: return "criticality";
    case SolverStatus::kSmallDecrease: return "small-decrease";
    case SolverStatus::kMaxOuter: return "max-outer";
  }
  return "unknown";
}

R2Result r2_subsolve(const QuadraticModel& model, const SparseBoxRegion& region, double sigma,
                     const SolverConfig& config, const std::function<bool(double)>& stop_on_xi1) {
  const Vector& center = region.center();
  const Index n = center.size();
  require_same_length(model.gradient_at_zero, n, "model gradient");
  require_finite(model.gradient_at_zero, "model gradient");
  if (!(region.radius() > 0.0)) throw std::invalid_argument("trust-region radius must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("R2 regularization must be positive");

  R2Result out;
  out.point = center;
  Vector h_step = Vector::Zero(n);  // H (point - center), updated incrementally
  double inner_tol = config.epsilon;

  for (int l = 1; l <= config.max_inner; ++l) {
    out.inner = l;
    const Vector grad = model.gradient_at_zero + h_step;
    const ProjectionResult proj = project_intersection(out.point - grad / sigma, region);
    const Vector t = proj.point - out.point;
    const double linear = grad.dot(t);
    const double xi_l = std::max(0.0, -(linear + 0.5 * sigma * t.squaredNorm()));
    if (!std::isfinite(xi_l)) throw NonFiniteError("R2 model decrease is not finite");

    if (l == 1) {
      out.xi1 = xi_l;
      if (stop_on_xi1 && stop_on_xi1(xi_l)) {
        out.critical = true;
        break;
      }
      inner_tol = std::max(config.epsilon, 1e-2 * std::sqrt(xi_l));
    }
    if (std::sqrt(xi_l) <= inner_tol) break;

    const Vector h_t = model.hessian_apply(t);
    const double model_change = linear + 0.5 * t.dot(h_t);  // q(s + t) - q(s)
    if (!std::isfinite(model_change)) throw NonFiniteError("R2 model value is not finite");
    const double ratio = -model_change / -linear;
    if (ratio >= config.eta1) {
      out.point = proj.point;
      h_step += h_t;
      if (ratio >= config.eta2) sigma = std::max(config.sigma_min, sigma / config.gamma);
    } else {
      sigma *= config.gamma;
    }
  }

  out.step = out.point - center;
  out.xi = std::max(0.0, -(model.gradient_at_zero.dot(out.step) + 0.5 * out.step.dot(h_step)));
  return out;
}

SolverResult tr_solve(const RegularizedProblem& problem, const SolverConfig& config) {
  config.validate();
  if (!problem.value || !problem.gradient) throw std::invalid_argument("TR needs objective value and gradient");
  Vector x = starting_point(problem);
  const Index k = problem.sparsity;

  double f = problem.value(x);
  require_finite_value(f, "objective");
  Vector g = problem.gradient(x);
  require_finite(g, "gradient");
  int gradient_evals = 1;

  QuasiNewtonOperator b(config.quasi_newton, problem.dimension, config.memory);
  OuterLoop loop(config);
  loop.result.history.push_back({gradient_evals, f});

  for (int j = 1; j <= config.max_outer; ++j) {
    const double norm_b = b.norm_estimate();
    const SparseBoxRegion region(x, loop.delta, k);
    const QuadraticModel model{0.0, g, [&b](const Vector& v) { return b.apply(v); }};
    const R2Result r2 =
        r2_subsolve(model, region, std::max(1.0, norm_b), config, criticality_test(config.epsilon, loop.xi1_initial));
    if (loop.note_subsolve(r2, j)) break;
    if (r2.xi <= 1e-16 * std::max(1.0, std::abs(f))) {
      loop.result.status = SolverStatus::kSmallDecrease;
      break;
    }

    const double f_trial = problem.value(r2.point);
    require_finite_value(f_trial, "objective");
    const double rho = (f - f_trial) / r2.xi;

    IterationRecord rec;
    rec.outer = j;
    rec.inner = r2.inner;
    rec.f = f;
    rec.h = indicator(x, k);
    rec.sqrt_xi1 = std::sqrt(r2.xi1);
    rec.sqrt_xi = std::sqrt(r2.xi);
    rec.rho = rho;
    rec.delta = loop.delta;
    rec.norm_x = inf_norm(x);
    rec.norm_s = inf_norm(r2.step);
    rec.model_scale = norm_b;
    rec.accepted = rho >= config.eta1;
    loop.result.records.push_back(rec);

    if (rec.accepted) {
      x = r2.point;
      f = f_trial;
      Vector g_new = problem.gradient(x);
      require_finite(g_new, "gradient");
      ++gradient_evals;
      b.update(r2.step, g_new - g);
      g = std::move(g_new);
      loop.note_accepted_step(r2.step);
      loop.result.history.push_back({gradient_evals, f});
    }
    loop.update_radius(rho, rec.norm_s);
  }

  loop.result.solution = std::move(x);
  loop.result.objective = f;
  return loop.result;
}

SolverResult lmtr_solve(const RegularizedProblem& problem, const SolverConfig& config) {
  config.validate();
  if (!problem.has_least_squares()) throw std::invalid_argument("LMTR needs the residual and Jacobian products");
  Vector x = starting_point(problem);
  const Index k = problem.sparsity;
  constexpr double kInitialSigma = 1.0;

  Vector residual = problem.residual(x);
  require_finite(residual, "residual");
  int residual_evals = 1;
  double f = 0.5 * residual.squaredNorm();

  OuterLoop loop(config);
  loop.result.history.push_back({residual_evals, f});

  for (int j = 1; j <= config.max_outer; ++j) {
    const Vector g = problem.jacobian_transpose_apply(x, residual);
    const SparseBoxRegion region(x, loop.delta, k);
    const QuadraticModel model{f, g, [&problem, &x](const Vector& v) {
                                 return problem.jacobian_transpose_apply(x, problem.jacobian_apply(x, v));
                               }};
    const R2Result r2 =
        r2_subsolve(model, region, kInitialSigma, config, criticality_test(config.epsilon, loop.xi1_initial));
    if (loop.note_subsolve(r2, j)) break;

    // Gauss-Newton decrease evaluated in residual space for accuracy.
    const Vector j_step = problem.jacobian_apply(x, r2.step);
    const double xi = std::max(0.0, -(residual.dot(j_step) + 0.5 * j_step.squaredNorm()));
    if (xi <= 1e-16 * std::max(1.0, std::abs(f))) {
      loop.result.status = SolverStatus::kSmallDecrease;
      break;
    }

    Vector residual_trial = problem.residual(r2.point);
    require_finite(residual_trial, "residual");
    ++residual_evals;
    const double f_trial = 0.5 * residual_trial.squaredNorm();
    // f - f_trial written as a product of residual differences.
    const double actual = 0.5 * (residual - residual_trial).dot(residual + residual_trial);
    const double rho = actual / xi;

    IterationRecord rec;
    rec.outer = j;
    rec.inner = r2.inner;
    rec.f = f;
    rec.h = indicator(x, k);
    rec.sqrt_xi1 = std::sqrt(r2.xi1);
    rec.sqrt_xi = std::sqrt(xi);
    rec.rho = rho;
    rec.delta = loop.delta;
    rec.norm_x = inf_norm(x);
    rec.norm_s = inf_norm(r2.step);
    rec.model_scale = kInitialSigma;
    rec.accepted = rho >= config.eta1;
    loop.result.records.push_back(rec);

    if (rec.accepted) {
      x = r2.point;
      residual = std::move(residual_trial);
      f = f_trial;
      loop.note_accepted_step(r2.step);
    }
    loop.result.history.push_back({residual_evals, f});
    loop.update_radius(rho, rec.norm_s);
  }

  loop.result.solution = std::move(x);
  loop.result.objective = f;
  return loop.result;
}

}  // namespace b0box
