#include "tropwave/perturb.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace tropwave {

namespace {

Scalar half(const Scalar& s) { return s / 2; }

Scalar min_over_points(const TropicalSeries& f, const std::vector<Point>& pts) {
  Scalar best = f.evaluate(pts.front());
  for (const auto& p : pts) best = min(best, f.evaluate(p));
  return best;
}

std::string describe_offence(const CellVerdict& v) {
  std::ostringstream os;
  os << "cell {";
  for (std::size_t i = 0; i < v.exponents.size(); ++i) os << (i ? " " : "") << v.exponents[i].str();
  os << "}";
  if (v.offending) os << " contains " << v.offending->str();
  return os.str();
}

// Minimum over an explicit list of monomials; equals the series wherever
// the list is its small support.
Scalar poly_min(const std::vector<Monomial>& terms, const Point& z) {
  Scalar best = monomial_value(terms.front(), z);
  for (const auto& m : terms) best = min(best, monomial_value(m, z));
  return best;
}

std::vector<Point> grid_in(const OmegaDomain& d, std::size_t k) {
  auto [lo, hi] = d.geometry().bounding_box();
  const std::size_t n = d.dim();
  std::vector<Point> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    Point z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = lo[i] + (hi[i] - lo[i]) * Scalar(Rational(static_cast<long long>(idx[i]), static_cast<long long>(k)));
    }
    if (d.contains(z)) out.push_back(std::move(z));
    std::size_t i = 0;
    while (i < n && ++idx[i] > k) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Values of s in (0, c) at which raising q0 by s moves its hyperplane
// through a vertex of the decomposition formed by the other monomials.
std::vector<Scalar> critical_raises(const TropicalSeries& f, const LatticeVector& q0, const Scalar& c) {
  const OmegaDomain& d = f.domain();
  // Lift q0 above every other monomial: others never exceed the width of
  // the domain in any facet direction.
  Scalar width = Scalar(0);
  for (const auto& n : d.seed_normals()) {
    Scalar hi = dot(n, d.geometry().vertices.front());
    for (const auto& v : d.geometry().vertices) hi = max(hi, dot(n, v));
    width = max(width, hi - d.support_value(n));
  }
  TropicalSeries others = f;
  others.raise(q0, width + 1);
  const Scalar a0 = f.coefficient(q0);
  std::set<std::vector<Rational>> seen;
  std::vector<Scalar> out;
  for (const auto& r : others.regions()->regions) {
    for (const auto& v : r.geometry.vertices) {
      if (!seen.insert(to_rationals(v)).second) continue;
      const Scalar s = monomial_value(r.monomial, v) - (dot(q0, v) + a0);
      if (s.sign() > 0 && s < c) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

BuildResult build_Q_and_g(const DomainPtr& omega, const std::vector<Point>& points, const PerturbConfig& config) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  if (omega->kind() != OmegaDomain::Kind::polytope) {
    throw std::invalid_argument("the perturbed flow needs an exact polytope domain");
  }
  if (config.eps.sign() <= 0) throw std::invalid_argument("eps must be positive");

  BuildResult b;
  b.omega = omega;
  b.points = points;
  auto closure = wave_closure(TropicalSeries::zero(omega), points);
  b.f = std::move(closure.series);
  b.trace = std::move(closure.trace);
  const TropicalSeries& f = *b.f;
  const Scalar min_fp = min_over_points(f, points);

  // The shift needs f(p) > eps_level at every p.
  b.eps_level = config.eps_level ? *config.eps_level : min(config.eps / 4, half(min_fp));
  if (b.eps_level.sign() <= 0) throw std::invalid_argument("eps_level must be positive");
  while (b.eps_level >= min_fp) b.eps_level = half(b.eps_level);

  auto level = level_set_polytope(f, b.eps_level);
  b.level = level.domain;
  const TropicalSeries& h = level.restricted;
  const Scalar min_hp = min_over_points(h, points);
  // Capping below min_p h(p) leaves the closure unchanged.
  b.eps_cap = config.eps_cap ? *config.eps_cap : b.eps_level;
  while (b.eps_cap >= min_hp) b.eps_cap = half(b.eps_cap);

  std::mt19937_64 rng(config.seed);
  std::string last_failure;
  const LatticeVector zero = LatticeVector::zero(omega->dim());
  for (int attempt = 0; attempt < std::max(1, config.retry_limit); ++attempt) {
    b.attempts = attempt + 1;
    TropicalSeries g1 = h;
    g1.set_coefficient(zero, b.eps_cap);
    const auto small = small_support(g1);
    std::vector<LatticeVector> small_q;
    for (const auto& m : small) small_q.push_back(m.q);
    const std::set<LatticeVector> in_small(small_q.begin(), small_q.end());

    // Distinct lowerings in (0, eps_cap/8) on a 2^-16 grid.
    constexpr long long kSteps = 1 << 16;
    std::set<long long> used;
    std::vector<Monomial> terms = small;
    b.lowered.clear();
    for (const auto& q : lattice_points_in_polytope(small_q)) {
      if (in_small.count(q)) continue;
      long long u = 0;
      do {
        u = 1 + static_cast<long long>(rng() % (kSteps - 1));
      } while (!used.insert(u).second);
      const Scalar dq = b.eps_cap / 8 * Scalar(Rational(u, kSteps));
      b.lowered.emplace(q, dq);
      terms.push_back({q, canonical_coefficient(g1, q) - dq});
    }

    std::vector<HalfSpace> hs;
    for (const auto& m : terms) {
      if (!m.q.is_zero()) hs.push_back(HalfSpace::make(m.q, -m.a));
    }
    try {
      b.q = OmegaDomain::polytope(std::move(hs), omega->dim(), "Q");
    } catch (const GeometryError& e) {
      last_failure = std::string("Q is degenerate: ") + e.what();
      b.eps_cap = half(b.eps_cap);
      continue;
    }
    for (const auto& p : points) {
      if (!b.q->interior(p)) throw PerturbError("point " + point_str(p) + " is not inside Q");
    }
    b.g = omega_from_polynomial(b.q, terms).series;

    const auto faces = mild_faces_check(*b.q);
    const auto bad_face = std::find_if(faces.begin(), faces.end(), [](const FaceMildness& m) { return !m.mild; });
    const auto report = is_mild(*b.g);
    if (bad_face == faces.end() && report.mild) return b;

    if (bad_face != faces.end()) {
      last_failure = "face of Q at vertex " + point_str(b.q->geometry().vertices[bad_face->vertices.front()]) +
                     " is not mild (contains " + bad_face->offending->str() + ")";
    } else {
      last_failure = "C(g) is not mild: " + describe_offence(*report.first_offence());
    }
    b.eps_cap = half(b.eps_cap);
  }
  throw PerturbError("no mild Q and g after " + std::to_string(b.attempts) + " attempts; last: " + last_failure);
}

PerturbReport perturbed_replay(const BuildResult& b, const PerturbConfig& config) {
  PerturbReport r;
  r.eps = config.eps;
  r.eps_level = b.eps_level;
  r.eps_cap = b.eps_cap;
  r.attempts = b.attempts;
  r.q = b.q;
  r.g = b.g;

  if (config.delta) {
    r.delta = *config.delta;
  } else {
    std::optional<Scalar> smallest;
    for (const auto& s : b.trace.steps) {
      if (s.c.sign() > 0 && (!smallest || s.c < *smallest)) smallest = s.c;
    }
    r.delta = smallest ? min(*smallest / 4, config.eps / 16) : config.eps / 16;
  }
  if (r.delta.sign() < 0) throw std::invalid_argument("delta must be non-negative");

  auto certify = [&](long step, const TropicalSeries& s, const Scalar& t) {
    ++r.certificates_checked;
    const auto rep = is_mild(s);
    if (!rep.mild) r.offences.push_back({step, t, false, *rep.first_offence()});
    return rep.mild;
  };

  certify(-1, *b.g, Scalar(0));
  TropicalSeries F = *b.g;
  const int k = std::max(1, config.flow_samples);

  auto apply = [&](std::size_t idx, bool from_trace) {
    const Point& p = b.points[idx];
    const Evaluation e = F.evaluate_full(p);
    ReplayStep st;
    st.point_index = idx;
    st.from_trace = from_trace;
    st.q = e.argmin.front();
    st.c_full = Scalar(0);
    if (e.argmin.size() == 1) st.c_full = F.value_without(p, st.q) - e.value;
    st.c_applied = max(st.c_full - r.delta, Scalar(0));
    if (st.c_applied.sign() > 0) {
      const long step = static_cast<long>(r.steps.size());
      std::vector<Scalar> ts;
      for (int i = 1; i <= k; ++i) ts.push_back(Scalar(Rational(i, k)));
      const auto crit = critical_raises(F, st.q, st.c_applied);
      for (const auto& s : crit) ts.push_back(s / st.c_applied);
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      // Midpoints between consecutive sample times catch changes in between.
      std::vector<Scalar> all = ts;
      Scalar prev = Scalar(0);
      for (const auto& t : ts) {
        all.push_back((prev + t) / 2);
        prev = t;
      }
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      for (const auto& t : all) {
        TropicalSeries s = F;
        s.raise(st.q, st.c_applied * t);
        st.mild = certify(step, s, t) && st.mild;
        ++st.samples;
      }
      F.raise(st.q, st.c_applied);
    }
    r.steps.push_back(st);
    return st;
  };

  for (const auto& s : b.trace.steps) apply(s.point_index, true);
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < b.points.size(); ++i) {
      if (apply(i, false).c_applied.sign() > 0) moved = true;
    }
    if (!moved) break;
    if (++r.extra_passes >= config.pass_cap) {
      r.failure = "replay did not settle within " + std::to_string(config.pass_cap) + " extra passes";
      break;
    }
  }
  // Drop the zero steps of the final settling pass; they carry no information.
  std::erase_if(r.steps, [](const ReplayStep& s) { return !s.from_trace && s.c_applied.sign() == 0; });
  r.result = F;

  // Distances, evaluated through the small supports.
  const auto fs = small_support(*b.f);
  const auto Fs = small_support(F);
  const std::size_t res = config.probe_grid ? config.probe_grid : (F.dim() == 2 ? 100 : 20);
  std::vector<Point> q_probes = grid_in(*b.q, res);
  for (const auto& c : corner_locus(F)) {
    if (c.face.dim == 0) q_probes.push_back(c.witness);
  }
  r.distance_q = Scalar(0);
  for (const auto& z : q_probes) {
    const Scalar d = abs(poly_min(Fs, z) - (poly_min(fs, z) - b.eps_level));
    if (d > r.distance_q || r.worst_q.empty()) {
      r.distance_q = d;
      r.worst_q = z;
    }
  }
  const std::vector<Point> o_probes = grid_in(*b.omega, res);
  r.distance_omega = Scalar(0);
  for (const auto& z : o_probes) {
    const Scalar Fz = b.q->contains(z) ? poly_min(Fs, z) : Scalar(0);
    const Scalar d = abs(Fz - poly_min(fs, z));
    if (d > r.distance_omega || r.worst_omega.empty()) {
      r.distance_omega = d;
      r.worst_omega = z;
    }
  }
  r.probes = q_probes.size() + o_probes.size();

  if (r.failure.empty() && !r.offences.empty()) {
    const auto& o = r.offences.front();
    r.failure = "non-mild intermediate at step " + std::to_string(o.step) + ", t = " + o.t.str() + ": " +
                describe_offence(*o.offence);
  }
  if (r.failure.empty() && r.distance_q > r.eps) {
    r.failure = "distance on Q " + r.distance_q.str() + " exceeds eps at " + point_str(r.worst_q);
  }
  if (r.failure.empty() && r.distance_omega > r.eps) {
    r.failure = "distance on the domain " + r.distance_omega.str() + " exceeds eps at " + point_str(r.worst_omega);
  }
  r.pass = r.failure.empty();
  return r;
}

PerturbReport perturb_pipeline(const DomainPtr& omega, const std::vector<Point>& points,
                               const PerturbConfig& config) {
  BuildResult b;
  try {
    b = build_Q_and_g(omega, points, config);
  } catch (const PerturbError& e) {
    PerturbReport r;
    r.eps = config.eps;
    r.failure = e.what();
    return r;
  }
  return perturbed_replay(b, config);
}

}  // namespace tropwave
