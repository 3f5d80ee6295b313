#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace testsupport;

namespace {

DomainPtr triangle() {
  return OmegaDomain::polytope(
      {HalfSpace::make({1, 0}, 0), HalfSpace::make({0, 1}, 0), HalfSpace::make({-1, -1}, -1)}, 2, "triangle");
}

// Euclidean distance to the boundary of a polygon domain, in doubles.
double true_distance(const OmegaDomain& d, const Point& z) {
  double best = INFINITY;
  for (const auto& h : d.geometry().halfspaces) {
    const double s = h.slack(z).to_double();
    best = std::min(best, s / std::sqrt(static_cast<double>(h.normal.norm_sq())));
  }
  return best;
}

}  // namespace

TEST_CASE("support values") {
  auto sq = unit_square();
  CHECK(sq->support_value({-1, -1}) == R(-2));
  CHECK(sq->support_value({2, 3}) == R(0));
  CHECK(sq->support_value({0, 0}) == R(0));

  auto ball = OmegaDomain::ball(P(0, 0), Scalar(R(1)), "disk");
  CHECK(ball->mode() == NumericMode::approximate);
  CHECK(std::abs(ball->support_value({1, 0}).to_double() + 1.0) < 1e-12);
  CHECK(std::abs(ball->support_value({3, 4}).to_double() + 5.0) < 1e-12);
}

TEST_CASE("support values are superadditive and positively homogeneous") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_polygon(rng);
    for (int k = 0; k < 30; ++k) {
      LatticeVector q{c(rng), c(rng)}, q2{c(rng), c(rng)};
      CHECK(d->support_value(q + q2) >= d->support_value(q) + d->support_value(q2));
      CHECK(d->support_value(3 * q) == d->support_value(q) * 3);
    }
  }
}

TEST_CASE("default monomials are non-negative on the domain") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = random_polygon(rng);
    for (int k = 0; k < 40; ++k) {
      Point z = random_interior_point(rng, *d, 17);
      CHECK(d->default_value({c(rng), c(rng)}, z).sign() >= 0);
    }
    for (const auto& v : d->geometry().vertices) CHECK(d->default_value({c(rng), c(rng)}, v).sign() >= 0);
  }
}

TEST_CASE("boundary distance lower bound") {
  auto sq = unit_square();
  CHECK(sq->boundary_distance_lb(P(R(1, 2), R(1, 2))) == R(1, 2));
  CHECK(sq->boundary_distance_lb(P(R(1, 5), R(1, 2))) == R(1, 5));
  CHECK_THROWS_AS(sq->boundary_distance_lb(P(0, R(1, 2))), NotInterior);
  CHECK_THROWS_AS(sq->boundary_distance_lb(P(2, R(1, 2))), NotInterior);

  // The hypotenuse has slack 1/2 and normal length sqrt 2, so the bound is
  // limited by the two legs at 1/4.
  auto tri = triangle();
  const Point z = P(R(1, 4), R(1, 4));
  const Scalar lb = tri->boundary_distance_lb(z);
  CHECK(lb == R(1, 4));
  CHECK(lb.to_double() <= true_distance(*tri, z) + 1e-15);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_polygon(rng);
    for (int k = 0; k < 10; ++k) {
      Point p = random_interior_point(rng, *d, 23);
      const double lbv = d->boundary_distance_lb(p).to_double();
      CHECK(lbv > 0);
      CHECK(lbv <= true_distance(*d, p) + 1e-12);
    }
  }
}

TEST_CASE("weighted distance") {
  auto sq = unit_square();
  auto wd = sq->weighted_distance(P(R(1, 2), R(1, 2)));
  CHECK(wd.value == R(1, 2));
  CHECK_FALSE(wd.boundary);
  CHECK(wd.argmin.size() == 4);

  // Brute force over |q| <= 2: nothing beats 1/2 and (1,0) attains it.
  for (const auto& q : lattice_ball(Scalar(4), 2)) {
    if (q.is_zero()) continue;
    CHECK(sq->default_value(q, P(R(1, 2), R(1, 2))) >= R(1, 2));
  }
  CHECK(sq->default_value({1, 0}, P(R(1, 2), R(1, 2))) == R(1, 2));

  auto edge = sq->weighted_distance(P(0, R(1, 2)));
  CHECK(edge.value == R(0));
  CHECK(edge.boundary);

  auto ball = OmegaDomain::ball(P(0, 0), Scalar(R(1)), "disk");
  CHECK(std::abs(ball->weighted_distance(P(0, 0)).value.to_double() - 1.0) < 1e-9);

  auto off = sq->weighted_distance(P(R(1, 5), R(1, 2)));
  CHECK(off.value == R(1, 5));
  CHECK(off.argmin == std::vector<LatticeVector>{{1, 0}});
}

TEST_CASE("weighted distance matches brute force on random polygons") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 15; ++trial) {
    auto d = random_polygon(rng);
    for (int k = 0; k < 8; ++k) {
      Point z = random_interior_point(rng, *d, 29);
      std::optional<Scalar> brute;
      for (const auto& q : lattice_ball(Scalar(400), 2)) {
        if (q.is_zero()) continue;
        Scalar v = d->default_value(q, z);
        if (!brute || v < *brute) brute = v;
      }
      const auto wd = d->weighted_distance(z);
      CHECK(wd.value == *brute);
      for (const auto& q : wd.argmin) CHECK(d->default_value(q, z) == wd.value);
    }
  }
}

TEST_CASE("default enumeration reports exactly the monomials under the bound") {
  auto d = triangle();
  const Point z = P(R(1, 5), R(1, 3));
  const Scalar bound(R(3, 2));
  std::set<LatticeVector> seen;
  d->for_each_default_within(z, bound, [&](const LatticeVector& q, const Scalar& v) {
    CHECK(v == d->default_value(q, z));
    CHECK(v <= bound);
    seen.insert(q);
  });
  for (const auto& q : lattice_ball(Scalar(400), 2)) {
    CHECK(seen.count(q) == (d->default_value(q, z) <= bound ? 1u : 0u));
  }
  CHECK_THROWS_AS(d->for_each_default_within(z, Scalar(1000), [](const LatticeVector&, const Scalar&) {}, 100),
                  ResourceError);
}

TEST_CASE("mild faces") {
  auto sq = unit_square();
  CHECK(all_faces_mild(*sq));
  for (const auto& f : mild_faces_check(*sq)) {
    CHECK(f.mild);
    if (f.dim == 0) CHECK(f.normals.size() == 2);
  }

  // Corner with facet normals (1,0) and (1,2): conv contains (1,1).
  auto wedge = OmegaDomain::polytope(
      {HalfSpace::make({1, 0}, 0), HalfSpace::make({1, 2}, 0), HalfSpace::make({-1, 0}, -2),
       HalfSpace::make({-1, -1}, -2)},
      2);
  bool found = false;
  for (const auto& f : mild_faces_check(*wedge)) {
    if (f.dim == 1) CHECK(f.mild);
    if (f.dim == 0 && f.vertices.size() == 1 && wedge->geometry().vertices[f.vertices[0]] == P(0, 0)) {
      found = true;
      CHECK_FALSE(f.mild);
      REQUIRE(f.offending.has_value());
      CHECK(*f.offending == LatticeVector{1, 1});
    }
  }
  CHECK(found);
  CHECK_FALSE(all_faces_mild(*wedge));
}

TEST_CASE("2-D vertex mildness agrees with the determinant test") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    auto d = random_polygon(rng, 5);
    const auto& g = d->geometry();
    for (const auto& f : mild_faces_check(*d)) {
      if (f.dim != 0) continue;
      REQUIRE(f.normals.size() == 2);
      const auto& a = f.normals[0];
      const auto& b = f.normals[1];
      const long long det = a[0] * b[1] - a[1] * b[0];
      CHECK(f.mild == (det == 1 || det == -1));
    }
    (void)g;
  }
}

TEST_CASE("three-dimensional box is mild") {
  auto cube = box(3, 1);
  CHECK(cube->geometry().vertices.size() == 8);
  CHECK(all_faces_mild(*cube));
  CHECK(cube->boundary_distance_lb(P3(R(1, 2), R(1, 3), R(1, 4))) == R(1, 4));
  CHECK(cube->weighted_distance(P3(R(1, 2), R(1, 3), R(1, 4))).value == R(1, 4));
}
