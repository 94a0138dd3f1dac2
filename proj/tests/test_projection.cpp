#include "helpers.hpp"

#include "b0box/oracle.hpp"
#include "b0box/projection.hpp"
#include "b0box/random.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace b0box;
using test::vec;

TEST_CASE("region validates its invariants") {
  CHECK_NOTHROW(SparseBoxRegion(vec({0, -1}), 2.0, 1));
  CHECK_THROWS_AS(SparseBoxRegion(vec({1, -1}), 2.0, 1), RegionError);
  CHECK_THROWS_AS(SparseBoxRegion(vec({0, -1}), -0.5, 1), RegionError);
  CHECK_THROWS_AS(SparseBoxRegion(vec({0, 0}), 1.0, 3), RegionError);
  CHECK_THROWS_AS(SparseBoxRegion(Vector(0), 1.0, 0), RegionError);
  CHECK_THROWS_AS(SparseBoxRegion(vec({0, std::nan("")}), 1.0, 1), NonFiniteError);
  CHECK_THROWS_AS(SparseBoxRegion(vec({0, 0}), std::numeric_limits<double>::infinity(), 1), NonFiniteError);

  const SparseBoxRegion r(vec({0, -1}), 2.0, 1);
  CHECK(membership(r.center(), r));
}

TEST_CASE("project_box clips componentwise") {
  const SparseBoxRegion r(vec({0, -1}), 2.0, 1);
  CHECK(test::same(project_box(vec({2, 3}), r), vec({2, 1})));
  CHECK(test::same(project_box(r.center(), r), r.center()));
  const SparseBoxRegion flat(vec({0, -1}), 0.0, 1);
  CHECK(test::same(project_box(vec({7, -9}), flat), flat.center()));
  const Vector once = project_box(vec({5, -5}), r);
  CHECK(test::same(project_box(once, r), once));
  CHECK_THROWS_AS(project_box(vec({1, 2, 3}), r), DimensionError);
  CHECK_THROWS_AS(project_box(vec({1, std::nan("")}), r), NonFiniteError);
}

TEST_CASE("project_piece zeroes the complement") {
  CHECK(test::same(project_piece(vec({1, 2, 3}), {0, 2}), vec({1, 0, 3})));
  CHECK(test::same(project_piece(vec({1, 2, 3}), {0, 1, 2}), vec({1, 2, 3})));
  CHECK(test::same(project_piece(vec({1, 2, 3}), {}), vec({0, 0, 0})));
  CHECK(test::same(project_piece(project_piece(vec({1, 2, 3}), {1}), {1}), vec({0, 2, 0})));
  CHECK_THROWS_AS(project_piece(vec({1, 2, 3}), {3}), std::out_of_range);
}

TEST_CASE("project_sparse keeps the largest magnitudes") {
  auto r = project_sparse(vec({-2.5, 2.5}), 1);
  CHECK(test::same(r.point, vec({-2.5, 0})));
  CHECK(r.support == IndexSet{0});
  CHECK(test::same(project_sparse(vec({1, 3, 2}), 2).point, vec({0, 3, 2})));
  CHECK(test::same(project_sparse(vec({1, -3, 2}), 3).point, vec({1, -3, 2})));

  r = project_sparse(vec({0, 0, 4}), 2);
  CHECK(r.support.size() == 2);
  CHECK(count_nonzeros(r.point) == 1);
  CHECK_THROWS_AS(project_sparse(vec({1, 2}), 3), std::out_of_range);
  CHECK_THROWS_AS(project_sparse(vec({1, 2}), -1), std::out_of_range);
}

TEST_CASE("classify_support splits by magnitude against the radius") {
  auto s = classify_support(SparseBoxRegion(vec({0, -1}), 2.0, 1));
  CHECK(s.small == IndexSet{1});
  CHECK(s.large.empty());
  s = classify_support(SparseBoxRegion(vec({5, 0, 0.5}), 1.0, 2));
  CHECK(s.small == IndexSet{2});
  CHECK(s.large == IndexSet{0});
  s = classify_support(SparseBoxRegion(vec({0, 0, 0}), 1.0, 2));
  CHECK(s.small.empty());
  CHECK(s.large.empty());
  // |x_i| == radius is small
  s = classify_support(SparseBoxRegion(vec({1, 0}), 1.0, 1));
  CHECK(s.small == IndexSet{0});
}

TEST_CASE("worked example: the clipped solution beats the basic feasible point") {
  const SparseBoxRegion r(vec({0, -1}), 2.0, 1);
  const auto p = project_intersection(vec({2, 3}), r);
  CHECK(test::same(p.point, vec({0, 1})));
  CHECK(p.support == IndexSet{1});
  CHECK(p.sq_distance == 8.0);
  CHECK(std::abs(std::sqrt(p.sq_distance) - 2.0 * std::sqrt(2.0)) <= 1e-14);
}

TEST_CASE("two-dimensional box fixtures") {
  const SparseBoxRegion r(vec({0, -1}), 3.0, 1);
  CHECK(test::same(project_intersection(vec({-2.5, 2.5}), r).point, vec({-2.5, 0})));
  CHECK(test::same(project_intersection(vec({-4, -3.5}), r).point, vec({-3, 0})));
  const auto p3 = project_intersection(vec({3, 2}), r);
  CHECK(test::same(p3.point, vec({3, 0})));
  CHECK(p3.sq_distance == 4.0);
  const auto oracle = enumerate_projection(vec({3, 2}), r);
  CHECK(oracle.best_sq_distance == 4.0);

  // large center component is forced into the support
  const SparseBoxRegion r2(vec({0, -2.5}), 1.5, 1);
  const auto p = project_intersection(vec({2, 1}), r2);
  CHECK(test::same(p.point, vec({0, -1})));
  CHECK(p.sq_distance == 8.0);
}

TEST_CASE("members project to themselves and k = 0 gives zero") {
  const SparseBoxRegion r(vec({0, -1, 0}), 2.0, 2);
  const Vector y = vec({0.5, 0, 0});
  CHECK(test::same(project_intersection(y, r).point, y));
  const SparseBoxRegion zero(vec({0, 0}), 1.0, 0);
  const auto p = project_intersection(vec({3, -0.2}), zero);
  CHECK(test::same(p.point, vec({0, 0})));
  CHECK(p.support.empty());
}

TEST_CASE("w inside the box still keeps large center components") {
  // the two largest |w_i| would drop index 1, whose center value exceeds the radius
  const SparseBoxRegion r(vec({1, 2.5, 0}), 1.5, 2);
  const Vector w = vec({2.5, 1.1, 1.4});
  const auto truncated = project_sparse(w, 2);
  CHECK_FALSE(membership(truncated.point, r));
  const auto p = project_intersection(w, r);
  CHECK(test::same(p.point, vec({2.5, 1.1, 0})));
  CHECK(p.sq_distance == doctest::Approx(1.96).epsilon(1e-14));
  CHECK(enumerate_projection(w, r).best_sq_distance == doctest::Approx(1.96).epsilon(1e-14));
}

TEST_CASE("membership") {
  const SparseBoxRegion r(vec({0, -1}), 2.0, 1);
  CHECK(membership(vec({0, 1}), r));
  CHECK_FALSE(membership(vec({2, 3}), r));
  CHECK_FALSE(membership(vec({0, 1.5}), r));
  CHECK(membership(vec({0, 1.0 + 1e-13}), r, 1e-12));
  CHECK_FALSE(membership(vec({0, 1, 0}), r));
}

TEST_CASE("projection errors") {
  const SparseBoxRegion r(vec({0, -1}), 2.0, 1);
  CHECK_THROWS_AS(project_intersection(vec({1, 2, 3}), r), DimensionError);
  CHECK_THROWS_AS(project_intersection(vec({1, std::numeric_limits<double>::infinity()}), r), NonFiniteError);
}

TEST_CASE("random properties of project_intersection") {
  Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto inst = random_projection_instance(rng, 12);
    const auto& region = inst.region;
    const auto p = project_intersection(inst.w, region);
    CAPTURE(trial);
    CAPTURE(inst.regime);

    REQUIRE(membership(p.point, region, 1e-12));
    CHECK(static_cast<Index>(p.support.size()) <= region.sparsity());
    for (Index i = 0; i < p.point.size(); ++i) {
      if (!std::binary_search(p.support.begin(), p.support.end(), i)) CHECK(p.point[i] == 0.0);
    }
    const double d = squared_distance(inst.w, p.point);
    CHECK(std::abs(d - p.sq_distance) <= 1e-12 * std::max(1.0, d));

    const auto split = classify_support(region);
    for (Index i : split.large) {
      CHECK(std::binary_search(p.support.begin(), p.support.end(), i));
      CHECK(p.point[i] != 0.0);
    }

    // idempotence
    CHECK(test::same(project_intersection(p.point, region).point, p.point));

    // short circuit
    if (split.large.empty() && (inst.w - region.center()).cwiseAbs().maxCoeff() <= region.radius()) {
      CHECK(test::same(p.point, project_sparse(inst.w, region.sparsity()).point));
    }

    // only large components: the unique answer is the clipped large part
    if (!split.large.empty() && split.small.empty() && static_cast<Index>(split.large.size()) == region.sparsity()) {
      CHECK(test::same(p.point, project_piece(project_box(inst.w, region), split.large)));
    }

    // scaling by a power of two is exact in floating point
    const double alpha = 4.0;
    const SparseBoxRegion scaled(alpha * region.center(), alpha * region.radius(), region.sparsity());
    const auto ps = project_intersection(alpha * inst.w, scaled);
    CHECK(test::same(ps.point, alpha * p.point));
    CHECK(ps.support == p.support);

    // any k-support containing the forced indices keeps a box point in the box
    const Vector y = project_box(inst.w, region);
    IndexSet piece = split.large;
    for (Index i = 0; i < region.dimension() && static_cast<Index>(piece.size()) < region.sparsity(); ++i) {
      if (!std::binary_search(split.large.begin(), split.large.end(), i)) piece.push_back(i);
    }
    std::sort(piece.begin(), piece.end());
    const Vector z = project_piece(y, piece);
    CHECK((z - region.center()).cwiseAbs().maxCoeff() <= region.radius() + 1e-12 * std::max(1.0, region.radius()));
  }
}
