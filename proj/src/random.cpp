#include "b0box/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace b0box {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::index(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % n;
}

ProjectionInstance random_projection_instance(Rng& rng, Index max_n) {
  const Index n = rng.between(1, std::max<Index>(1, max_n));
  const Index k = rng.between(0, n);
  const bool grid = rng.coin(0.125);
  auto snap = [grid](double v) { return grid ? std::round(2.0 * v) / 2.0 : v; };

  double radius = rng.coin(0.03) ? 0.0 : snap(rng.uniform(0.1, 3.0));
  if (grid && radius == 0.0 && rng.coin(0.5)) radius = 0.5;

  // 0: zero center, 1: small only, 2: mixed, 3: large only.
  const int center_kind = static_cast<int>(rng.index(4));
  static const char* const kCenterNames[] = {"zero", "small", "mixed", "large"};

  Vector x = Vector::Zero(n);
  if (center_kind != 0 && k > 0) {
    const Index nnz = rng.between(1, k);
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (Index i = 0; i < nnz; ++i) {
      const Index j = i + static_cast<Index>(rng.index(static_cast<std::uint64_t>(n - i)));
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
      bool large = center_kind == 3 || (center_kind == 2 && rng.coin(0.5));
      double mag = large ? radius + rng.uniform(0.1, 3.0) : rng.uniform(0.0, radius);
      mag = snap(mag);
      if (large && mag <= radius) mag = radius + 0.5;
      if (!large && (mag > radius || mag == 0.0)) mag = radius > 0.0 ? radius : 0.5;
      x[order[static_cast<std::size_t>(i)]] = rng.coin(0.5) ? mag : -mag;
    }
  }

  const bool inside = rng.coin(0.3);
  Vector w(n);
  for (Index i = 0; i < n; ++i) {
    if (inside) {
      w[i] = snap(x[i] + radius * rng.uniform(-1.0, 1.0));
      w[i] = std::max(x[i] - radius, std::min(w[i], x[i] + radius));
    } else {
      w[i] = snap(x[i] + (2.0 * radius + 1.0) * rng.normal());
    }
    if (rng.coin(0.05)) w[i] = 0.0;
  }

  std::string regime = std::string(kCenterNames[center_kind]) + (inside ? "/inside" : "/outside");
  if (grid) regime += "/grid";
  return {std::move(w), SparseBoxRegion(std::move(x), radius, k), std::move(regime)};
}

}  // namespace b0box
