// Fixtures and brute-force oracles shared by the unit and acceptance tests.
#pragma once

#include <random>
#include <vector>

#include "tropwave/dynamics.hpp"

namespace testsupport {

using namespace tropwave;

// Exact scalar p/q. Returning Scalar rather than Rational keeps doctest from
// printing a moved-from temporary when a comparison fails.
inline Scalar R(long long p, long long q = 1) { return Scalar(Rational(p, q)); }
inline Point P(const Scalar& x, const Scalar& y) { return {x, y}; }
inline Point P3(const Scalar& x, const Scalar& y, const Scalar& z) { return {x, y, z}; }
inline Monomial M(LatticeVector q, const Scalar& a) { return {std::move(q), a}; }

/// [0,s]^n
inline DomainPtr box(std::size_t n, long long s = 1) {
  std::vector<HalfSpace> hs;
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n);
    e[i] = 1;
    hs.push_back(HalfSpace::make(e, 0));
    hs.push_back(HalfSpace::make(-e, -s));
  }
  return OmegaDomain::polytope(hs, n, n == 2 && s == 1 ? "unit-square" : "box");
}

inline DomainPtr unit_square() { return box(2, 1); }

/// min(x, y, 1-x, 1-y, 1/3) on the unit square.
inline TropicalSeries square_example(const DomainPtr& d) {
  return TropicalSeries::omega(d, {M({0, 0}, R(1, 3))});
}

/// A random lattice polygon: the hull of random integer points, given by
/// its facet halfspaces with primitive normals.
inline DomainPtr random_polygon(std::mt19937_64& rng, int span = 4) {
  std::uniform_int_distribution<int> c(0, span);
  for (;;) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(P(c(rng), c(rng)));
    PointHull hull(pts);
    if (hull.affine_dim() != 2) continue;
    const auto& v = hull.vertices();
    // Order the hull vertices by angle around their centroid.
    double cx = 0, cy = 0;
    for (const auto& p : v) {
      cx += p[0].to_double();
      cy += p[1].to_double();
    }
    cx /= v.size();
    cy /= v.size();
    std::vector<Point> ord = v;
    std::sort(ord.begin(), ord.end(), [&](const Point& a, const Point& b) {
      return std::atan2(a[1].to_double() - cy, a[0].to_double() - cx) <
             std::atan2(b[1].to_double() - cy, b[0].to_double() - cx);
    });
    std::vector<HalfSpace> hs;
    for (std::size_t i = 0; i < ord.size(); ++i) {
      const auto& a = ord[i];
      const auto& b = ord[(i + 1) % ord.size()];
      const auto dx = (b[0] - a[0]).rational().convert_to<long long>();
      const auto dy = (b[1] - a[1]).rational().convert_to<long long>();
      LatticeVector n{-dy, dx};  // inward for counter-clockwise order
      hs.push_back(HalfSpace::make(n, dot(n, a)));
    }
    return OmegaDomain::polytope(hs, 2, "random-polygon");
  }
}

/// A uniformly random rational interior point with the given denominator.
inline Point random_interior_point(std::mt19937_64& rng, const OmegaDomain& d, long long den) {
  auto [lo, hi] = d.geometry().bounding_box();
  for (;;) {
    Point z;
    for (std::size_t i = 0; i < d.dim(); ++i) {
      const auto a = (lo[i].rational() * den).convert_to<long long>();
      const auto b = (hi[i].rational() * den).convert_to<long long>();
      std::uniform_int_distribution<long long> u(a, b);
      z.emplace_back(Rational(u(rng), den));
    }
    if (d.interior(z)) return z;
  }
}

/// Brute-force value of an omega series: minimum over explicit terms and
/// every default with |q| <= radius.
inline Scalar brute_value(const TropicalSeries& f, const Point& z, long long radius = 20) {
  std::optional<Scalar> best;
  for (const auto& m : f.monomials()) {
    Scalar v = monomial_value(m, z);
    if (!best || v < *best) best = v;
  }
  if (f.kind() == SeriesKind::omega) {
    for (const auto& q : lattice_ball(radius * radius, f.dim())) {
      if (f.has_explicit(q)) continue;
      Scalar v = f.domain().default_value(q, z);
      if (!best || v < *best) best = v;
    }
  }
  return *best;
}

/// A random omega series on d: a few raised coefficients with small denominators.
inline TropicalSeries random_series(std::mt19937_64& rng, const DomainPtr& d, int raises = 4) {
  TropicalSeries f = TropicalSeries::zero(d);
  std::uniform_int_distribution<int> c(-2, 2);
  std::uniform_int_distribution<int> num(1, 6);
  f.set_coefficient(LatticeVector{0, 0}, Scalar(R(num(rng) + 4, 2)));
  for (int i = 0; i < raises; ++i) {
    LatticeVector q{c(rng), c(rng)};
    if (q.is_zero()) continue;
    f.raise(q, Scalar(R(num(rng), 6)));
  }
  return f;
}

}  // namespace testsupport
