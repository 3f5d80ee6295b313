#include "catalogue.hpp"
#include "doctest.h"
#include "support.hpp"
#include "tropwave/perturb.hpp"

using namespace testsupport;

namespace {

// Lattice pentagon whose consecutive edge vectors form lattice bases.
DomainPtr pentagon() {
  return OmegaDomain::polytope({HalfSpace::make({0, 1}, 0), HalfSpace::make({-1, 1}, -2), HalfSpace::make({-1, 0}, -3),
                                HalfSpace::make({0, -1}, -2), HalfSpace::make({1, -1}, 0)},
                               2, "pentagon");
}

}  // namespace

TEST_CASE("pentagon fixture is mild") {
  auto d = pentagon();
  CHECK(d->geometry().vertices == std::vector<Point>{P(0, 0), P(2, 0), P(3, 1), P(3, 2), P(2, 2)});
  CHECK(all_faces_mild(*d));
}

TEST_CASE("build Q and g on the square") {
  auto sq = unit_square();
  PerturbConfig cfg;
  cfg.eps_level = R(1, 8);
  auto b = build_Q_and_g(sq, {P(R(1, 2), R(1, 2))}, cfg);
  CHECK(b.eps_level == R(1, 8));
  CHECK(b.level->geometry().vertices ==
        std::vector<Point>{P(R(1, 8), R(1, 8)), P(R(7, 8), R(1, 8)), P(R(7, 8), R(7, 8)), P(R(1, 8), R(7, 8))});
  CHECK(b.eps_cap <= b.eps_level);
  // g vanishes on the boundary of Q and stays within [0, eps_cap].
  for (const auto& v : b.q->geometry().vertices) CHECK(b.g->evaluate(v) == R(0));
  for (int i = 1; i < 16; ++i) {
    for (int j = 1; j < 16; ++j) {
      const Point z = P(R(i, 16), R(j, 16));
      if (!b.q->contains(z)) continue;
      const Scalar v = b.g->evaluate(z);
      CHECK(v.sign() >= 0);
      CHECK(v <= b.eps_cap);
    }
  }
  CHECK(is_mild(*b.g).mild);
  CHECK(all_faces_mild(*b.q));

  CHECK_THROWS_WITH(build_Q_and_g(sq, {}, cfg), "empty point set");
}

TEST_CASE("eps_level is halved until it sits below f on P") {
  auto sq = unit_square();
  PerturbConfig cfg;
  cfg.eps_level = R(1, 2);  // equals f(p)
  auto b = build_Q_and_g(sq, {P(R(1, 2), R(1, 2))}, cfg);
  CHECK(b.eps_level == R(1, 4));
}

TEST_CASE("perturbed flow on the square") {
  auto sq = unit_square();
  PerturbConfig cfg;
  auto r = perturb_pipeline(sq, {P(R(1, 2), R(1, 2))}, cfg);
  INFO(r.failure);
  CHECK(r.pass);
  CHECK(r.offences.empty());
  CHECK(r.distance_q <= R(1, 4));
  CHECK(r.distance_omega <= R(1, 4));
  CHECK(r.certificates_checked > 1);
  for (const auto& s : r.steps) {
    if (s.c_applied.sign() > 0) CHECK(s.c_applied == s.c_full - r.delta);
    if (s.c_applied.sign() == 0) CHECK(s.c_full <= r.delta);
  }
}

TEST_CASE("perturbed flow on the pentagon") {
  auto d = pentagon();
  PerturbConfig cfg;
  const std::vector<Point> pts{P(R(3, 2), R(1, 2)), P(R(5, 2), R(3, 2)), P(R(2, 1), R(1, 1))};
  auto r = perturb_pipeline(d, pts, cfg);
  INFO(r.failure);
  CHECK(r.pass);
  // Independent check of the end state: every brute-force tie set of the
  // small support is in the mild catalogue.
  REQUIRE(r.result.has_value());
  for (const auto* s : {&*r.g, &*r.result}) {
    for (const auto& b : catalogue::tie_sets(small_support(*s), *r.q)) CHECK(catalogue::catalogue_mild(b));
  }
}

TEST_CASE("parallel replays stay rho-close") {
  auto d = pentagon();
  const std::vector<Point> pts{P(R(3, 2), R(1, 2)), P(R(5, 2), R(3, 2))};
  auto b = build_Q_and_g(d, pts, PerturbConfig{});
  TropicalSeries a = *b.g;
  TropicalSeries c = *b.g;
  c.raise({0, 0}, R(1, 100));
  c.raise({1, 0}, R(1, 200));
  Scalar prev = rho(a, c);
  for (const auto& s : b.trace.steps) {
    wave_single_in_place(a, pts[s.point_index]);
    wave_single_in_place(c, pts[s.point_index]);
    const Scalar now = rho(a, c);
    CHECK(now <= prev);
    prev = now;
  }
}

TEST_CASE("distance grows with delta") {
  auto sq = unit_square();
  const std::vector<Point> pts{P(R(1, 3), R(1, 2)), P(R(2, 3), R(1, 3))};
  std::vector<Scalar> dists;
  for (const auto& delta : {R(1, 64), R(1, 32), R(1, 16)}) {
    PerturbConfig cfg;
    cfg.delta = delta;
    auto r = perturb_pipeline(sq, pts, cfg);
    INFO(r.failure);
    CHECK(r.result.has_value());
    dists.push_back(r.distance_q);
  }
  CHECK(dists[0] <= dists[1]);
  CHECK(dists[1] <= dists[2]);
}

TEST_CASE("unperturbed increments reach a non-mild endpoint") {
  // With delta = 0 the single step lands all five monomials on the centre.
  auto sq = unit_square();
  PerturbConfig cfg;
  cfg.delta = R(0);
  auto r = perturb_pipeline(sq, {P(R(1, 2), R(1, 2))}, cfg);
  CHECK_FALSE(r.pass);
  REQUIRE(r.offences.size() == 1);
  CHECK(r.offences[0].step == 0);
  CHECK(r.offences[0].t == R(1));
  CHECK(*r.offences[0].offence->offending == LatticeVector{0, 0});
}
