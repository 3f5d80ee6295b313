#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "tropwave/experiments.hpp"

using namespace testsupport;

TEST_CASE("first avalanche covers the whole square") {
  auto sq = unit_square();
  for (std::uint64_t seed : {1, 7, 42}) {
    auto s = avalanche_experiment(sq, 1, seed);
    REQUIRE(s.size() == 1);
    CHECK(s[0].measure == R(1));
    CHECK(s[0].q0 == LatticeVector{0, 0});
    CHECK(s[0].steps == 1);
  }
}

TEST_CASE("second avalanche is a strict sub-polygon") {
  auto sq = unit_square();
  TropicalSeries f = TropicalSeries::zero(sq);
  auto s = avalanche_experiment(sq, 2, 42, f);
  REQUIRE(s.size() == 2);
  CHECK(s[1].measure < R(1));
  CHECK(s[1].measure.sign() > 0);

  // Oracle: after one wave at p0 the series is min(l(z), l(p0)); the face of the
  // monomial minimal at p1 is a single default or the constant plateau.
  // Its area from a fine grid count must bracket the exact value.
  auto g = wave_single(TropicalSeries::zero(sq), s[0].p).series;
  REQUIRE(s[1].q0.has_value());
  const int k = 400;
  int hits = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const Point z = P(R(2 * i + 1, 2 * k), R(2 * j + 1, 2 * k));
      const auto b = g.argmin_set(z);
      hits += b.size() == 1 && b.front() == *s[1].q0;
    }
  }
  const double est = static_cast<double>(hits) / (k * k);
  CHECK(std::abs(est - s[1].measure.to_double()) < 0.01);
}

TEST_CASE("sampled points sit on the 2^-32 grid inside the domain") {
  auto sq = unit_square();
  auto s = avalanche_experiment(sq, 20, 5);
  const Rational grid = Rational(1) / Rational(std::uint64_t{1} << 32);
  for (const auto& a : s) {
    CHECK(sq->interior(a.p));
    for (const auto& x : a.p) {
      const Rational scaled = x.rational() / grid;
      CHECK(denominator(scaled) == 1);
    }
  }
}

TEST_CASE("experiment properties on a random polygon") {
  std::mt19937_64 rng(8);
  auto d = random_polygon(rng);
  TropicalSeries f = TropicalSeries::zero(d);
  const std::size_t n = 40;
  auto s = avalanche_experiment(d, n, 11, f);
  const Scalar area = d->measure();
  Scalar sum = R(0);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(s[i].measure.sign() >= 0);
    CHECK(s[i].measure <= area);
    sum += s[i].measure;
    CHECK(sum <= area * static_cast<long long>(i + 1));
    // measure 0 exactly when the point was already on the corner locus.
    CHECK((s[i].measure.sign() == 0) == (s[i].c.sign() == 0));
  }

  // f is pointwise non-decreasing over the stream: replay and probe.
  std::vector<Point> probes;
  for (int i = 0; i < 100; ++i) probes.push_back(random_interior_point(rng, *d, 29));
  TropicalSeries g = TropicalSeries::zero(d);
  std::vector<Scalar> prev(probes.size(), R(0));
  for (const auto& a : s) {
    wave_single_in_place(g, a.p);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const Scalar v = g.evaluate(probes[k]);
      CHECK(prev[k] <= v);
      prev[k] = v;
    }
  }
  for (const auto& z : probes) CHECK(g.evaluate(z) == f.evaluate(z));
}

TEST_CASE("experiment output is deterministic") {
  auto sq = unit_square();
  std::ostringstream a, b, c;
  write_avalanche_csv(a, avalanche_experiment(sq, 60, 42), 2);
  write_avalanche_csv(b, avalanche_experiment(sq, 60, 42), 2);
  write_avalanche_csv(c, avalanche_experiment(sq, 60, 43), 2);
  CHECK(a.str() == b.str());
  CHECK(a.str() != c.str());
  std::istringstream in(a.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,px,py,q1,q2,measure,c,px_exact,py_exact,measure_exact,c_exact");
  std::string row;
  std::getline(in, row);
  CHECK(row.rfind("0,", 0) == 0);
  CHECK(row.find(",0,0,1,") != std::string::npos);
}

TEST_CASE("avalanches on a disc are estimated") {
  auto disc = OmegaDomain::ball(P(0, 0), R(1));
  auto s = avalanche_experiment(disc, 3, 2);
  REQUIRE(s.size() == 3);
  // First face is the whole disc.
  CHECK(std::abs(s[0].measure.to_double() - M_PI) < 0.05);
  CHECK(s[1].measure.to_double() < s[0].measure.to_double());
  for (const auto& a : s) CHECK_FALSE(a.measure.is_exact());
}

TEST_CASE("MLE on synthetic Pareto data") {
  const double alpha = 2.5;
  const std::pair<std::size_t, double> cases[] = {{1000, 0.15}, {10000, 0.05}, {100000, 0.02}};
  for (const auto& [n, tol] : cases) {
    auto xs = pareto_samples(alpha, 1.0, n, 2024);
    auto fit = fit_power_law(xs, XMinPolicy::at(1.0));
    INFO("N = " << n << ", alpha = " << fit.alpha);
    CHECK(std::abs(fit.alpha - alpha) < tol);
    CHECK(fit.tail_count == n);
    CHECK(fit.ks < 0.05);
    REQUIRE(fit.alpha_regression.has_value());
    CHECK(std::abs(*fit.alpha_regression - alpha) < 0.5);
  }
}

TEST_CASE("x_min scan finds the start of the tail") {
  // Uniform noise below 1, Pareto above.
  auto xs = pareto_samples(2.0, 1.0, 5000, 3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int i = 0; i < 5000; ++i) xs.push_back(u(rng));
  auto fit = fit_power_law(xs, XMinPolicy::scan());
  CHECK(fit.x_min >= 0.8);
  CHECK(std::abs(fit.alpha - 2.0) < 0.15);
  auto again = fit_power_law(xs, XMinPolicy::scan());
  CHECK(again.alpha == fit.alpha);
}

TEST_CASE("fit errors") {
  CHECK_THROWS_WITH(fit_power_law(std::vector<double>(49, 2.0), XMinPolicy::at(1.0)),
                    "power-law fit needs at least 50 samples above x_min, got 49");
  CHECK_THROWS_WITH(fit_power_law(std::vector<double>(100, 2.0), XMinPolicy::at(2.0)),
                    "power-law fit: samples have zero log-spread");
  CHECK_THROWS_WITH(fit_power_law(std::vector<double>(100, 2.0), XMinPolicy::scan()),
                    "power-law fit: samples have zero log-spread");
  CHECK_THROWS(fit_power_law(std::vector<double>(10, 2.0), XMinPolicy::scan()));
}
