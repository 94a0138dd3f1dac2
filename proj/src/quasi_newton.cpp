#include "b0box/quasi_newton.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace b0box {
namespace {

constexpr double kSkipTolerance = 1e-8;

}  // namespace

std::string_view to_string(QuasiNewtonKind kind) {
  return kind == QuasiNewtonKind::kLbfgs ? "lbfgs" : "lsr1";
}

QuasiNewtonOperator::QuasiNewtonOperator(QuasiNewtonKind kind, Index dimension, int memory, double scaling)
    : kind_(kind), dimension_(dimension), memory_(memory), scaling_(scaling) {
  if (dimension_ < 1) throw std::invalid_argument("quasi-Newton dimension must be positive");
  if (memory_ < 1) throw std::invalid_argument("quasi-Newton memory must be positive");
  if (!(scaling_ > 0.0) || !std::isfinite(scaling_)) throw std::invalid_argument("quasi-Newton scaling must be positive");
}

Vector QuasiNewtonOperator::apply_terms(const Vector& v, std::size_t count) const {
  Vector out = scaling_ * v;
  for (std::size_t i = 0; i < count; ++i) {
    const Term& t = terms_[i];
    if (kind_ == QuasiNewtonKind::kLbfgs) {
      const Pair& p = pairs_[i];
      out.noalias() -= (t.direction.dot(v) / t.denominator) * t.direction;
      out.noalias() += (p.grad_diff.dot(v) / p.grad_diff.dot(p.step)) * p.grad_diff;
    } else {
      out.noalias() += (t.direction.dot(v) / t.denominator) * t.direction;
    }
  }
  return out;
}

Vector QuasiNewtonOperator::apply(const Vector& v) const {
  require_same_length(v, dimension_, "quasi-Newton operand");
  return apply_terms(v, terms_.size());
}

bool QuasiNewtonOperator::acceptable(const Vector& step, const Vector& grad_diff, const Vector& b_step) const {
  if (kind_ == QuasiNewtonKind::kLbfgs) {
    return step.dot(grad_diff) > kSkipTolerance * step.norm() * grad_diff.norm();
  }
  const Vector u = grad_diff - b_step;
  return std::abs(step.dot(u)) > kSkipTolerance * step.norm() * u.norm();
}

// Recomputes the cached terms pair by pair. An L-SR1 pair that has become
// degenerate relative to the shortened history is dropped.
void QuasiNewtonOperator::rebuild() {
  std::deque<Pair> kept;
  terms_.clear();
  pairs_.swap(kept);
  for (Pair& p : kept) {
    const Vector b_step = apply_terms(p.step, terms_.size());
    if (!acceptable(p.step, p.grad_diff, b_step)) continue;
    if (kind_ == QuasiNewtonKind::kLbfgs) {
      terms_.push_back({b_step, p.step.dot(b_step)});
    } else {
      Vector u = p.grad_diff - b_step;
      const double denom = u.dot(p.step);
      terms_.push_back({std::move(u), denom});
    }
    pairs_.push_back(std::move(p));
  }
}

bool QuasiNewtonOperator::update(const Vector& step, const Vector& grad_diff) {
  require_same_length(step, dimension_, "quasi-Newton step");
  require_same_length(grad_diff, dimension_, "quasi-Newton gradient difference");
  if (!step.allFinite() || !grad_diff.allFinite()) return false;

  if (static_cast<int>(pairs_.size()) < memory_) {
    const Vector b_step = apply(step);
    if (!acceptable(step, grad_diff, b_step)) return false;
    pairs_.push_back({step, grad_diff});
    if (kind_ == QuasiNewtonKind::kLbfgs) {
      terms_.push_back({b_step, step.dot(b_step)});
    } else {
      Vector u = grad_diff - b_step;
      const double denom = u.dot(step);
      terms_.push_back({std::move(u), denom});
    }
    return true;
  }

  // Full: test the new pair against the history without its oldest entry,
  // and only commit the eviction if the pair is accepted.
  QuasiNewtonOperator trial = *this;
  trial.pairs_.pop_front();
  trial.rebuild();
  if (!trial.update(step, grad_diff)) return false;
  *this = std::move(trial);
  return true;
}

double QuasiNewtonOperator::norm_estimate() const {
  if (terms_.empty()) return scaling_;
  Vector v(dimension_);
  for (Index i = 0; i < dimension_; ++i) v[i] = 1.0 + 0.5 * std::cos(0.7 + 1.618033988749895 * static_cast<double>(i));
  v.normalize();
  double estimate = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const Vector bv = apply(v);
    const double next = bv.norm();
    if (next == 0.0) return 0.0;
    const bool settled = iter > 0 && std::abs(next - estimate) <= 1e-4 * next;
    estimate = next;
    if (settled) break;
    v = bv / next;
  }
  return estimate;
}

Eigen::MatrixXd QuasiNewtonOperator::to_dense() const {
  Eigen::MatrixXd dense(dimension_, dimension_);
  for (Index j = 0; j < dimension_; ++j) dense.col(j) = apply(Vector::Unit(dimension_, j));
  return dense;
}

}  // namespace b0box
