#include "tropwave/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace tropwave {

std::string Schedule::str() const {
  if (kind == Kind::round_robin) return "round_robin";
  return "seeded_random(" + std::to_string(seed) + ")";
}

TropicalSeries add_monomial(const TropicalSeries& f, const LatticeVector& q, const Scalar& c, const Scalar& t) {
  if (c.sign() < 0) throw std::invalid_argument("add_monomial: increment must be non-negative");
  if (t.sign() < 0 || t > Scalar::from_int(1, t.mode())) {
    throw std::invalid_argument("add_monomial: flow parameter must lie in [0,1]");
  }
  TropicalSeries g = f;
  g.raise(q, c * t);
  return g;
}

WaveStep wave_single_in_place(TropicalSeries& f, const Point& p, std::size_t point_index) {
  if (!f.domain().interior(p)) throw NotInterior(point_str(p));
  const Evaluation e = f.evaluate_full(p);
  WaveStep step;
  step.point_index = point_index;
  step.value_before = e.value;
  if (e.argmin.size() >= 2) {
    step.q = e.argmin.front();
    step.c = Scalar::zero(f.mode());
    step.value_after = e.value;
    return step;
  }
  step.q = e.argmin.front();
  const Scalar second = f.value_without(p, step.q);
  step.c = second - e.value;
  step.value_after = second;
  f.raise(step.q, step.c);
  return step;
}

WaveResult wave_single(const TropicalSeries& f, const Point& p) {
  TropicalSeries g = f;
  WaveStep step = wave_single_in_place(g, p);
  return {std::move(g), std::move(step)};
}

ClosureResult wave_closure(const TropicalSeries& f_init, const std::vector<Point>& points,
                           const Schedule& schedule, double tolerance, std::size_t step_cap) {
  const OmegaDomain& domain = f_init.domain();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!domain.interior(points[i])) throw NotInterior(point_str(points[i]));
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw std::invalid_argument("duplicate point " + point_str(points[i]));
    }
  }
  ClosureResult out{f_init, {}, working_monomial_set(domain, points)};
  out.trace.schedule = schedule;
  if (points.empty()) return out;

  const bool exact = f_init.mode() == NumericMode::exact;
  std::mt19937_64 rng(schedule.seed);
  std::vector<std::size_t> order(points.size());
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    if (schedule.kind == Schedule::Kind::seeded_random) {
      // Fisher-Yates on raw engine output; std distributions are not
      // portable across standard libraries.
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(order[i], order[j]);
      }
    }
    double pass_max = 0;
    bool any = false;
    for (std::size_t idx : order) {
      if (out.trace.total_steps >= step_cap) {
        throw StepCapExceeded("wave_closure did not converge within " + std::to_string(step_cap) + " steps",
                              out.trace);
      }
      WaveStep step = wave_single_in_place(out.series, points[idx], idx);
      step.order = out.trace.total_steps++;
      if (step.c.sign() > 0) {
        any = true;
        pass_max = std::max(pass_max, step.c.to_double());
        out.trace.steps.push_back(std::move(step));
      }
    }
    ++out.trace.passes;
    if (exact ? !any : pass_max < tolerance) {
      out.trace.status = exact ? StopReason::stabilized : StopReason::tolerance;
      return out;
    }
  }
}

TropicalSeries replay(const TropicalSeries& f_init, const FlowTrace& trace) {
  TropicalSeries f = f_init;
  for (const auto& s : trace.steps) f.raise(s.q, s.c);
  return f;
}

LevelSet level_set_polytope(const TropicalSeries& f, const Scalar& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("level_set_polytope: eps must be positive");
  const auto terms = small_support(f);
  std::vector<HalfSpace> hs;
  std::vector<Monomial> shifted;
  for (const auto& m : terms) {
    shifted.push_back({m.q, m.a - eps});
    if (m.q.is_zero()) {
      if (m.a < eps) throw std::domain_error("eps too large");
      continue;
    }
    hs.push_back(HalfSpace::make(m.q, eps - m.a));
  }
  DomainPtr d;
  try {
    d = OmegaDomain::polytope(std::move(hs), f.dim(), f.domain().name() + "@" + eps.str());
  } catch (const GeometryError&) {
    throw std::domain_error("eps too large");
  }
  return {d, omega_from_polynomial(d, shifted).series};
}

AvalancheRegion avalanche_region(const TropicalSeries& f, const Point& p) {
  if (!f.domain().interior(p)) throw NotInterior(point_str(p));
  AvalancheRegion out;
  out.measure = Scalar::zero(f.mode());
  const Evaluation e = f.evaluate_full(p);
  if (e.argmin.size() != 1) return out;
  out.q0 = e.argmin.front();
  out.geometry = certified_region(f, *out.q0);
  if (out.geometry) out.measure = measure(*out.geometry).value;
  return out;
}

}  // namespace tropwave
