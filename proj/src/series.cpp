#include "tropwave/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tropwave {

Scalar monomial_value(const Monomial& m, const Point& z) { return dot(m.q, z) + m.a; }

const Region* RegionSet::find(const LatticeVector& q) const {
  for (const auto& r : regions) {
    if (r.monomial.q == q) return &r;
  }
  return nullptr;
}

TropicalSeries TropicalSeries::zero(DomainPtr domain) {
  TropicalSeries f(std::move(domain), SeriesKind::omega);
  f.put(LatticeVector::zero(f.dim()), Scalar::zero(f.mode()));
  return f;
}

TropicalSeries TropicalSeries::omega(DomainPtr domain, const std::vector<Monomial>& terms) {
  TropicalSeries f(std::move(domain), SeriesKind::omega);
  for (const auto& m : terms) f.set_coefficient(m.q, m.a);
  return f;
}

TropicalSeries TropicalSeries::polynomial(DomainPtr domain, const std::vector<Monomial>& terms) {
  if (terms.empty()) throw std::invalid_argument("a tropical polynomial needs at least one monomial");
  TropicalSeries f(std::move(domain), SeriesKind::polynomial);
  for (const auto& m : terms) f.set_coefficient(m.q, m.a);
  return f;
}

std::vector<Monomial> TropicalSeries::monomials() const {
  std::vector<Monomial> out;
  out.reserve(qs_.size());
  for (const auto& [q, i] : index_) out.push_back({q, as_[i]});
  return out;
}

std::optional<Scalar> TropicalSeries::explicit_coefficient(const LatticeVector& q) const {
  if (auto it = index_.find(q); it != index_.end()) return as_[it->second];
  return std::nullopt;
}

Scalar TropicalSeries::coefficient(const LatticeVector& q) const {
  if (auto it = index_.find(q); it != index_.end()) return as_[it->second];
  if (kind_ == SeriesKind::polynomial) {
    throw std::invalid_argument("exponent " + q.str() + " is not a term of the polynomial");
  }
  return -domain_->support_value(q);
}

bool TropicalSeries::is_raised(const LatticeVector& q) const {
  auto it = index_.find(q);
  if (it == index_.end()) return false;
  const Scalar excess = as_[it->second] + domain_->support_value(q);
  if (mode() == NumericMode::exact) return excess.sign() > 0;
  return excess.to_double() > domain_->tolerance();
}

void TropicalSeries::set_working_set(std::vector<LatticeVector> w) {
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  working_ = std::move(w);
  invalidate();
}

void TropicalSeries::check_term(const LatticeVector& q, const Scalar& a) const {
  if (q.dim() != dim()) throw std::invalid_argument("monomial dimension mismatch");
  if (a.mode() != mode()) throw ModeMismatch();
  const Scalar excess = a + domain_->support_value(q);
  const bool negative = mode() == NumericMode::exact ? excess.sign() < 0
                                                     : excess.to_double() < -domain_->tolerance();
  if (negative) {
    throw std::invalid_argument("monomial " + q.str() + " with coefficient " + a.str() +
                                " is negative somewhere on the domain");
  }
}

void TropicalSeries::put(const LatticeVector& q, const Scalar& a) {
  if (auto it = index_.find(q); it != index_.end()) {
    as_[it->second] = a;
    ad_[it->second] = a.to_double();
  } else {
    index_.emplace(q, qs_.size());
    qs_.push_back(q);
    as_.push_back(a);
    ad_.push_back(a.to_double());
  }
  small_ = false;
  invalidate();
}

void TropicalSeries::set_coefficient(const LatticeVector& q, const Scalar& a) {
  check_term(q, a);
  put(q, a);
}

void TropicalSeries::raise(const LatticeVector& q, const Scalar& c) {
  if (c.sign() < 0) throw std::invalid_argument("increment must be non-negative");
  if (c.sign() == 0) return;
  put(q, coefficient(q) + c);
}

bool TropicalSeries::same_terms(const TropicalSeries& other) const {
  if (kind_ != other.kind_ || !domain_->same_as(*other.domain_)) return false;
  std::set<LatticeVector> keys;
  for (const auto& q : qs_) keys.insert(q);
  for (const auto& q : other.qs_) keys.insert(q);
  for (const auto& q : keys) {
    if (kind_ == SeriesKind::polynomial && (!has_explicit(q) || !other.has_explicit(q))) return false;
    if (coefficient(q) != other.coefficient(q)) return false;
  }
  return true;
}

Evaluation TropicalSeries::interior_minimum(const Point& z, const LatticeVector* excluded) const {
  const bool exact = mode() == NumericMode::exact;
  const double tol = domain_->tolerance();
  auto less = [&](const Scalar& a, const Scalar& b) {
    return exact ? a < b : a.to_double() < b.to_double() - tol;
  };
  auto tie = [&](const Scalar& a, const Scalar& b) { return nearly_equal(a, b, tol); };

  std::vector<std::pair<LatticeVector, Scalar>> cands;
  std::optional<Scalar> best;

  // Explicit terms: double prefilter, then exact values for the near-minimal ones.
  if (!qs_.empty()) {
    std::vector<double> zd(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) zd[i] = z[i].to_double();
    std::vector<double> vals(qs_.size());
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < qs_.size(); ++i) {
      if (excluded && qs_[i] == *excluded) {
        vals[i] = std::numeric_limits<double>::infinity();
        continue;
      }
      double v = ad_[i];
      for (std::size_t k = 0; k < zd.size(); ++k) v += static_cast<double>(qs_[i][k]) * zd[k];
      vals[i] = v;
      lo = std::min(lo, v);
    }
    const double cut = lo + 1e-7 * (1.0 + std::abs(lo)) + tol;
    for (std::size_t i = 0; i < qs_.size(); ++i) {
      if (vals[i] > cut || (excluded && qs_[i] == *excluded)) continue;
      Scalar v = dot(qs_[i], z) + as_[i];
      if (!best || less(v, *best)) best = v;
      cands.emplace_back(qs_[i], std::move(v));
    }
  }

  if (kind_ == SeriesKind::omega) {
    auto consider = [&](const LatticeVector& q) {
      if (has_explicit(q) || (excluded && q == *excluded)) return;
      Scalar v = domain_->default_value(q, z);
      if (!best || less(v, *best)) best = v;
    };
    consider(LatticeVector::zero(dim()));
    for (const auto& n : domain_->seed_normals()) consider(n);
    const Scalar bound = *best;
    domain_->for_each_default_within(z, bound, [&](const LatticeVector& q, const Scalar& v) {
      if (has_explicit(q) || (excluded && q == *excluded)) return;
      if (less(v, *best)) best = v;
      cands.emplace_back(q, v);
    });
  }
  if (!best) throw std::logic_error("empty tropical polynomial");

  Evaluation e;
  e.value = *best;
  for (auto& [q, v] : cands) {
    if (tie(v, *best)) e.argmin.push_back(q);
  }
  std::sort(e.argmin.begin(), e.argmin.end());
  e.argmin.erase(std::unique(e.argmin.begin(), e.argmin.end()), e.argmin.end());
  return e;
}

Evaluation TropicalSeries::evaluate_full(const Point& z_in) const {
  const Point z = domain_->adapt(z_in);
  if (z.size() != dim()) throw std::invalid_argument("point dimension mismatch");
  if (!domain_->contains(z)) throw std::domain_error("point " + point_str(z) + " is outside the domain");
  if (kind_ == SeriesKind::omega && domain_->on_boundary(z)) {
    Evaluation e;
    e.value = Scalar::zero(mode());
    e.boundary = true;
    const double tol = domain_->tolerance();
    for (std::size_t i = 0; i < qs_.size(); ++i) {
      if (nearly_equal(dot(qs_[i], z) + as_[i], e.value, tol)) e.argmin.push_back(qs_[i]);
    }
    for (const auto& n : domain_->seed_normals()) {
      LatticeVector m = n;
      while (is_raised(m)) m += n;
      if (nearly_equal(coefficient(m) + dot(m, z), e.value, tol)) e.argmin.push_back(m);
    }
    std::sort(e.argmin.begin(), e.argmin.end());
    e.argmin.erase(std::unique(e.argmin.begin(), e.argmin.end()), e.argmin.end());
    return e;
  }
  return interior_minimum(z, nullptr);
}

Scalar TropicalSeries::value_without(const Point& z_in, const LatticeVector& excluded) const {
  const Point z = domain_->adapt(z_in);
  if (!domain_->interior(z)) throw NotInterior(point_str(z));
  return interior_minimum(z, &excluded).value;
}

// ---------------------------------------------------------------------------
// Certified regions

namespace {

using CandidateMap = std::map<LatticeVector, Scalar>;

CandidateMap initial_candidates(const TropicalSeries& f) {
  CandidateMap c;
  for (const auto& m : f.monomials()) c.emplace(m.q, m.a);
  if (f.kind() == SeriesKind::polynomial) return c;
  for (const auto& q : f.working_set()) c.emplace(q, f.coefficient(q));
  const LatticeVector zero = LatticeVector::zero(f.dim());
  c.emplace(zero, f.coefficient(zero));
  // Facet-normal multiples up to the first one still at its default: it
  // vanishes on that facet, which pins the function to zero there.
  for (const auto& n : f.domain().seed_normals()) {
    LatticeVector m = n;
    for (;;) {
      c.emplace(m, f.coefficient(m));
      if (!f.is_raised(m)) break;
      m += n;
    }
  }
  return c;
}

std::optional<PolytopeGeometry> region_of(const PolytopeGeometry& base, const CandidateMap& c,
                                          const LatticeVector& q, const Scalar& a) {
  std::vector<HalfSpace> cuts;
  cuts.reserve(c.size());
  for (const auto& [q2, a2] : c) {
    if (q2 == q) continue;
    cuts.push_back(HalfSpace::make(q2 - q, a - a2));
  }
  return clip(base, cuts);
}

// Checks the region's interior vertices against the exact series; returns
// false (and extends c) when some exponent outside c is minimal at one.
bool verify_region(const TropicalSeries& f, const PolytopeGeometry& region, const LatticeVector& q,
                   const Scalar& a, CandidateMap& c) {
  bool ok = true;
  for (const auto& v : region.vertices) {
    if (f.domain().on_boundary(v)) continue;
    const Evaluation e = f.evaluate_full(v);
    if (e.value != dot(q, v) + a) ok = false;
    for (const auto& q2 : e.argmin) {
      if (!c.count(q2)) {
        c.emplace(q2, f.coefficient(q2));
        ok = false;
      }
    }
    if (!ok) return false;
  }
  return true;
}

constexpr int kMaxRounds = 256;

RegionSet compute_regions(const TropicalSeries& f) {
  if (f.domain().kind() != OmegaDomain::Kind::polytope) {
    throw std::logic_error("linearity regions need a polytope domain");
  }
  const auto& base = f.domain().geometry();
  CandidateMap c = initial_candidates(f);
  for (int round = 0; round < kMaxRounds; ++round) {
    RegionSet rs;
    bool stable = true;
    for (const auto& [q, a] : c) {
      auto g = region_of(base, c, q, a);
      if (!g) continue;
      if (f.kind() == SeriesKind::omega && !verify_region(f, *g, q, a, c)) {
        stable = false;
        break;
      }
      rs.regions.push_back({{q, a}, std::move(*g)});
    }
    if (stable) {
      for (const auto& [q, a] : c) rs.candidates.push_back({q, a});
      return rs;
    }
  }
  throw SupportError("linearity regions not certified after " + std::to_string(kMaxRounds) +
                     " rounds; the small support may be infinite");
}

}  // namespace

std::shared_ptr<const RegionSet> TropicalSeries::regions() const {
  auto cache = cache_;
  std::lock_guard lock(cache->mutex);
  if (!cache->regions) cache->regions = std::make_shared<const RegionSet>(compute_regions(*this));
  return cache->regions;
}

std::optional<PolytopeGeometry> certified_region(const TropicalSeries& f, const LatticeVector& q) {
  const auto& base = f.domain().geometry();
  CandidateMap c = initial_candidates(f);
  if (!c.count(q)) c.emplace(q, f.coefficient(q));
  for (int round = 0; round < kMaxRounds; ++round) {
    const Scalar a = c.at(q);
    auto g = region_of(base, c, q, a);
    if (!g) return std::nullopt;
    if (f.kind() == SeriesKind::polynomial || verify_region(f, *g, q, a, c)) return g;
  }
  throw SupportError("region of " + q.str() + " not certified after " + std::to_string(kMaxRounds) +
                     " rounds");
}

namespace {

// Every vertex of every region with the function value there.
std::vector<std::pair<Point, Scalar>> region_vertices(const RegionSet& rs) {
  std::vector<std::pair<Point, Scalar>> out;
  std::set<std::vector<Rational>> seen;
  for (const auto& r : rs.regions) {
    for (const auto& v : r.geometry.vertices) {
      if (seen.insert(to_rationals(v)).second) out.emplace_back(v, monomial_value(r.monomial, v));
    }
  }
  return out;
}

}  // namespace

Scalar max_value(const TropicalSeries& f) {
  const auto rs = f.regions();
  std::optional<Scalar> best;
  for (const auto& [v, fv] : region_vertices(*rs)) {
    if (!best || *best < fv) best = fv;
  }
  return *best;
}

Scalar canonical_coefficient(const TropicalSeries& f, const LatticeVector& q) {
  std::optional<Scalar> sup;
  for (const auto& [v, fv] : region_vertices(*f.regions())) {
    Scalar s = fv - dot(q, v);
    if (!sup || *sup < s) sup = std::move(s);
  }
  return *sup;
}

TropicalSeries canonical_form(const TropicalSeries& f) {
  const auto rs = f.regions();
  const auto verts = region_vertices(*rs);
  std::vector<Monomial> terms;
  for (const auto& m : f.monomials()) {
    std::optional<Scalar> sup;
    for (const auto& [v, fv] : verts) {
      Scalar s = fv - dot(m.q, v);
      if (!sup || *sup < s) sup = std::move(s);
    }
    if (f.kind() == SeriesKind::omega && !m.q.is_zero() && *sup == -f.domain().support_value(m.q)) continue;
    terms.push_back({m.q, *sup});
  }
  TropicalSeries out = f.kind() == SeriesKind::omega ? TropicalSeries::omega(f.domain_ptr(), terms)
                                                     : TropicalSeries::polynomial(f.domain_ptr(), terms);
  out.set_working_set(f.working_set());
  return out;
}

std::vector<Monomial> small_support(const TropicalSeries& f) {
  std::vector<Monomial> out;
  for (const auto& r : f.regions()->regions) out.push_back(r.monomial);
  return out;
}

TropicalSeries small_canonical_form(const TropicalSeries& f) {
  auto terms = small_support(f);
  if (f.kind() == SeriesKind::omega) {
    // A dropped exponent would fall back to its default coefficient, which
    // can undercut f. Keep it, inactive, at its canonical coefficient.
    const auto verts = region_vertices(*f.regions());
    std::set<LatticeVector> kept;
    for (const auto& m : terms) kept.insert(m.q);
    for (const auto& m : f.monomials()) {
      if (kept.count(m.q)) continue;
      std::optional<Scalar> sup;
      for (const auto& [v, fv] : verts) {
        Scalar s = fv - dot(m.q, v);
        if (!sup || *sup < s) sup = std::move(s);
      }
      if (m.q.is_zero() || *sup != -f.domain().support_value(m.q)) terms.push_back({m.q, *sup});
    }
  }
  TropicalSeries out = f.kind() == SeriesKind::omega ? TropicalSeries::omega(f.domain_ptr(), terms)
                                                     : TropicalSeries::polynomial(f.domain_ptr(), terms);
  out.small_ = true;
  return out;
}

Scalar rho(const TropicalSeries& f, const TropicalSeries& g) {
  if (!f.domain().same_as(g.domain())) throw std::invalid_argument("rho: series live on different domains");
  if (f.kind() != g.kind()) throw std::invalid_argument("rho: series of different kinds");
  std::set<LatticeVector> keys;
  for (const auto& m : f.monomials()) keys.insert(m.q);
  for (const auto& m : g.monomials()) keys.insert(m.q);
  Scalar best = Scalar::zero(f.mode());
  for (const auto& q : keys) best = max(best, abs(f.coefficient(q) - g.coefficient(q)));
  return best;
}

OmegaConversion omega_from_polynomial(DomainPtr domain, const std::vector<Monomial>& terms) {
  const TropicalSeries poly = TropicalSeries::polynomial(domain, terms);
  std::vector<Monomial> all = terms;
  const LatticeVector zero = LatticeVector::zero(domain->dim());
  if (!poly.has_explicit(zero)) all.push_back({zero, max_value(poly)});
  OmegaConversion out{TropicalSeries::omega(domain, all), false};
  for (const auto& r : out.series.regions()->regions) {
    if (!poly.has_explicit(r.monomial.q) && !r.monomial.q.is_zero()) out.changed = true;
  }
  return out;
}

WorkingSet working_monomial_set(const OmegaDomain& domain, const std::vector<Point>& points,
                                const Scalar& budget_factor) {
  WorkingSet ws;
  std::set<LatticeVector> acc;
  acc.insert(LatticeVector::zero(domain.dim()));
  const auto count = static_cast<long long>(points.size());
  for (const auto& p : points) {
    const WeightedDistance wd = domain.weighted_distance(p);
    if (wd.boundary) throw NotInterior(point_str(p));
    const Scalar factor = domain.mode() == NumericMode::exact ? budget_factor
                                                              : Scalar::approximate(budget_factor.to_double());
    Scalar bound = factor * wd.value * count;
    domain.for_each_default_within(p, bound, [&](const LatticeVector& q, const Scalar&) { acc.insert(q); });
    ws.certificate.push_back({p, wd.value, bound});
  }
  ws.exponents.assign(acc.begin(), acc.end());
  return ws;
}

}  // namespace tropwave
