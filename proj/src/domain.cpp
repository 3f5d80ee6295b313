#include "tropwave/domain.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace tropwave {

namespace {

std::vector<double> to_doubles(const Point& z) {
  std::vector<double> d(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) d[i] = z[i].to_double();
  return d;
}

double norm(const LatticeVector& q) { return std::sqrt(static_cast<double>(q.norm_sq())); }

}  // namespace

std::shared_ptr<const OmegaDomain> OmegaDomain::polytope(std::vector<HalfSpace> halfspaces, std::size_t n,
                                                         std::string name) {
  std::shared_ptr<OmegaDomain> d(new OmegaDomain());
  d->kind_ = Kind::polytope;
  d->dim_ = n;
  d->name_ = std::move(name);
  d->geometry_ = halfspaces_to_geometry(std::move(halfspaces), n);
  d->facets_ = d->geometry_->nonredundant_halfspaces();
  for (const auto& h : d->facets_) {
    d->facet_norm_ub_.push_back(sqrt_upper(BigInt(h.normal.norm_sq())));
    if (std::find(d->seed_normals_.begin(), d->seed_normals_.end(), h.normal) == d->seed_normals_.end()) {
      d->seed_normals_.push_back(h.normal);
    }
  }
  for (const auto& v : d->geometry_->vertices) d->vertices_d_.push_back(to_doubles(v));
  return d;
}

std::shared_ptr<const OmegaDomain> OmegaDomain::ball(const Point& center, const Scalar& radius,
                                                     std::string name) {
  if (radius.to_double() <= 0) throw std::invalid_argument("ball radius must be positive");
  std::shared_ptr<OmegaDomain> d(new OmegaDomain());
  d->kind_ = Kind::ball;
  d->dim_ = center.size();
  d->name_ = std::move(name);
  for (const auto& c : center) d->center_.push_back(Scalar::approximate(c.to_double()));
  d->radius_ = Scalar::approximate(radius.to_double());
  for (std::size_t i = 0; i < d->dim_; ++i) {
    LatticeVector e(d->dim_);
    e[i] = 1;
    d->seed_normals_.push_back(e);
    d->seed_normals_.push_back(-e);
  }
  return d;
}

std::shared_ptr<const OmegaDomain> OmegaDomain::oracle(std::size_t n, SupportFn support, DistanceFn distance,
                                                       std::string name) {
  std::shared_ptr<OmegaDomain> d(new OmegaDomain());
  d->kind_ = Kind::oracle;
  d->dim_ = n;
  d->name_ = std::move(name);
  d->support_fn_ = std::move(support);
  d->distance_fn_ = std::move(distance);
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n);
    e[i] = 1;
    d->seed_normals_.push_back(e);
    d->seed_normals_.push_back(-e);
  }
  return d;
}

const PolytopeGeometry& OmegaDomain::geometry() const {
  if (!geometry_) throw std::logic_error("domain is not a polytope");
  return *geometry_;
}

Scalar OmegaDomain::support_value(const LatticeVector& q) const {
  if (q.dim() != dim_) throw std::invalid_argument("support_value: dimension mismatch");
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = memo_.find(q); it != memo_.end()) return it->second;
  }
  Scalar c;
  switch (kind_) {
    case Kind::polytope: {
      bool first = true;
      for (const auto& v : geometry_->vertices) {
        Scalar s = dot(q, v);
        if (first || s < c) c = std::move(s);
        first = false;
      }
      break;
    }
    case Kind::ball:
      c = Scalar::approximate(dot(q, center_).to_double() - radius_.to_double() * norm(q));
      break;
    case Kind::oracle:
      c = Scalar::approximate(support_fn_(q));
      break;
  }
  std::unique_lock lock(memo_mutex_);
  memo_.emplace(q, c);
  return c;
}

Scalar OmegaDomain::default_value(const LatticeVector& q, const Point& z) const {
  if (kind_ != Kind::polytope) return dot(q, adapt(z)) - support_value(q);
  return dot(q, z) - support_value(q);
}

bool OmegaDomain::contains(const Point& z) const {
  if (z.size() != dim_) throw std::invalid_argument("point dimension mismatch");
  switch (kind_) {
    case Kind::polytope:
      return geometry_->contains(z);
    case Kind::ball: {
      double s = 0;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double d = z[i].to_double() - center_[i].to_double();
        s += d * d;
      }
      return std::sqrt(s) <= radius_.to_double() + tolerance();
    }
    case Kind::oracle:
      return distance_fn_(to_doubles(z)) >= -tolerance();
  }
  return false;
}

bool OmegaDomain::on_boundary(const Point& z) const {
  switch (kind_) {
    case Kind::polytope:
      return geometry_->on_boundary(z);
    case Kind::ball: {
      double s = 0;
      for (std::size_t i = 0; i < dim_; ++i) {
        const double d = z[i].to_double() - center_[i].to_double();
        s += d * d;
      }
      return std::abs(std::sqrt(s) - radius_.to_double()) <= tolerance();
    }
    case Kind::oracle:
      return std::abs(distance_fn_(to_doubles(z))) <= tolerance();
  }
  return false;
}

Scalar OmegaDomain::boundary_distance_lb(const Point& z) const {
  if (z.size() != dim_) throw std::invalid_argument("point dimension mismatch");
  if (kind_ == Kind::polytope) {
    std::optional<Rational> best;
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      const Rational s = facets_[i].slack(z).rational();
      if (s <= 0) throw NotInterior(point_str(z));
      Rational r = s / facet_norm_ub_[i];
      if (!best || r < *best) best = std::move(r);
    }
    return Scalar(*best);
  }
  double d = 0;
  if (kind_ == Kind::ball) {
    double s = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double t = z[i].to_double() - center_[i].to_double();
      s += t * t;
    }
    d = radius_.to_double() - std::sqrt(s);
  } else {
    d = distance_fn_(to_doubles(z));
  }
  if (d <= tolerance()) throw NotInterior(point_str(z));
  return Scalar::approximate(d);
}

void OmegaDomain::scan_polytope(const Point& z, const Scalar& bound,
                                const std::function<void(const LatticeVector&, const Scalar&)>& visit,
                                std::size_t cap) const {
  const Scalar r = boundary_distance_lb(z);
  const Rational lim = bound.rational() / r.rational();
  const Rational lim_sq = lim * lim;
  const std::vector<double> zd = to_doubles(z);
  const double bound_d = bound.to_double();
  const double margin = 1e-7 * (1.0 + std::abs(bound_d));
  const std::size_t nv = vertices_d_.size();
  // Offsets z - v for every vertex, in double precision, for prefiltering.
  std::vector<std::vector<double>> diff(nv, std::vector<double>(dim_));
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t i = 0; i < dim_; ++i) diff[v][i] = zd[i] - vertices_d_[v][i];
  }
  const auto& verts = geometry_->vertices;

  std::size_t examined = 0;
  LatticeVector q(dim_);
  std::vector<double> partial(nv, 0.0);  // sum over fixed coordinates of q_i (z - v)_i

  auto exact_value = [&](const LatticeVector& cand, const std::vector<double>& vals) {
    // c_q = min over vertices of q . v, i.e. l^q(z) = max over vertices of q . (z - v).
    double hi = vals[0];
    for (double x : vals) hi = std::max(hi, x);
    std::optional<Rational> c;
    const double cut = hi - 1e-7 * (1.0 + std::abs(hi));
    for (std::size_t v = 0; v < nv; ++v) {
      if (vals[v] < cut) continue;
      Rational s = dot(cand, verts[v]).rational();
      if (!c || s < *c) c = std::move(s);
    }
    return Scalar(Rational(dot(cand, z).rational() - *c));
  };

  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t k, const Rational& remaining) {
    const BigInt rb = boost::multiprecision::sqrt(floor(remaining));
    const std::int64_t m = rb.convert_to<std::int64_t>();
    if (k + 1 < dim_) {
      for (std::int64_t x = -m; x <= m; ++x) {
        if (++examined > cap) {
          throw ResourceError("lattice enumeration cap of " + std::to_string(cap) + " points exceeded at " +
                              point_str(z) + " with bound " + bound.str());
        }
        q[k] = x;
        for (std::size_t v = 0; v < nv; ++v) partial[v] += static_cast<double>(x) * diff[v][k];
        rec(k + 1, remaining - Rational(x * x));
        for (std::size_t v = 0; v < nv; ++v) partial[v] -= static_cast<double>(x) * diff[v][k];
      }
      q[k] = 0;
      return;
    }
    // Last coordinate: intersect the ball range with t * d_v <= bound - partial_v.
    double lo = static_cast<double>(-m);
    double hi = static_cast<double>(m);
    for (std::size_t v = 0; v < nv && lo <= hi; ++v) {
      const double d = diff[v][k];
      const double rhs = bound_d + margin - partial[v];
      if (std::abs(d) < 1e-300) {
        if (rhs < 0) hi = lo - 1;
      } else if (d > 0) {
        hi = std::min(hi, std::floor(rhs / d) + 1);
      } else {
        lo = std::max(lo, std::ceil(rhs / d) - 1);
      }
    }
    if (lo > hi) return;
    const auto t0 = static_cast<std::int64_t>(std::max(lo, static_cast<double>(-m)));
    const auto t1 = static_cast<std::int64_t>(std::min(hi, static_cast<double>(m)));
    std::vector<double> vals(nv);
    for (std::int64_t t = t0; t <= t1; ++t) {
      if (++examined > cap) {
        throw ResourceError("lattice enumeration cap of " + std::to_string(cap) + " points exceeded at " +
                            point_str(z) + " with bound " + bound.str());
      }
      q[k] = t;
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < nv; ++v) {
        vals[v] = partial[v] + static_cast<double>(t) * diff[v][k];
        worst = std::max(worst, vals[v]);
      }
      if (worst > bound_d + margin) continue;
      Scalar val = exact_value(q, vals);
      if (val <= bound) visit(q, val);
    }
    q[k] = 0;
  };
  rec(0, lim_sq);
}

void OmegaDomain::for_each_default_within(const Point& z, const Scalar& bound,
                                          const std::function<void(const LatticeVector&, const Scalar&)>& visit,
                                          std::size_t cap) const {
  if (bound.sign() < 0) return;
  if (kind_ == Kind::polytope) {
    scan_polytope(z, bound, visit, cap);
    return;
  }
  const Scalar r = boundary_distance_lb(z);
  const double lim = (bound.to_double() + tolerance()) / r.to_double();
  for_each_in_lattice_ball(
      Scalar::approximate(lim * lim), dim_,
      [&](const LatticeVector& q) {
        Scalar v = default_value(q, z);
        if (v.to_double() <= bound.to_double() + tolerance()) visit(q, v);
      },
      cap);
}

WeightedDistance OmegaDomain::weighted_distance(const Point& z_in) const {
  const Point z = adapt(z_in);
  WeightedDistance out;
  if (!contains(z)) throw NotInterior(point_str(z));
  if (on_boundary(z)) {
    out.value = Scalar::zero(mode());
    out.boundary = true;
    return out;
  }
  Scalar best = default_value(seed_normals_.front(), z);
  for (const auto& q : seed_normals_) best = min(best, default_value(q, z));
  const double tol = tolerance();
  bool have = false;
  for_each_default_within(z, best, [&](const LatticeVector& q, const Scalar& v) {
    if (q.is_zero()) return;
    if (!have || (!nearly_equal(v, best, tol) && v < best)) {
      best = v;
      out.argmin = {q};
      have = true;
    } else if (nearly_equal(v, best, tol)) {
      out.argmin.push_back(q);
    }
  });
  // Drop entries made stale by a later, smaller minimum (approximate mode).
  std::erase_if(out.argmin, [&](const LatticeVector& q) { return !nearly_equal(default_value(q, z), best, tol); });
  out.value = best;
  return out;
}

Scalar OmegaDomain::measure() const {
  switch (kind_) {
    case Kind::polytope:
      return tropwave::measure(*geometry_).value;
    case Kind::ball: {
      const double r = radius_.to_double();
      if (dim_ == 1) return Scalar::approximate(2 * r);
      if (dim_ == 2) return Scalar::approximate(std::numbers::pi * r * r);
      return Scalar::approximate(4.0 / 3.0 * std::numbers::pi * r * r * r);
    }
    case Kind::oracle:
      break;
  }
  throw std::logic_error("measure is unavailable for support-oracle domains");
}

bool OmegaDomain::same_as(const OmegaDomain& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_ || dim_ != other.dim_) return false;
  switch (kind_) {
    case Kind::polytope: {
      auto a = facets_;
      auto b = other.facets_;
      auto less = [](const HalfSpace& x, const HalfSpace& y) {
        if (x.normal != y.normal) return x.normal < y.normal;
        return x.offset < y.offset;
      };
      std::sort(a.begin(), a.end(), less);
      std::sort(b.begin(), b.end(), less);
      return a == b;
    }
    case Kind::ball:
      return center_ == other.center_ && radius_ == other.radius_;
    case Kind::oracle:
      return false;
  }
  return false;
}

Point OmegaDomain::interior_point() const {
  switch (kind_) {
    case Kind::polytope:
      return geometry_->centroid();
    case Kind::ball:
      return center_;
    case Kind::oracle:
      break;
  }
  throw std::logic_error("support-oracle domains have no stored interior point");
}

Point OmegaDomain::adapt(const Point& z) const {
  if (mode() == NumericMode::exact) {
    for (const auto& c : z) {
      if (!c.is_exact()) throw ModeMismatch();
    }
    return z;
  }
  Point out;
  for (const auto& c : z) out.push_back(Scalar::approximate(c.to_double()));
  return out;
}

namespace {

FaceMildness check_face(std::size_t dim, std::vector<std::size_t> verts, std::vector<LatticeVector> normals) {
  FaceMildness f;
  f.dim = dim;
  f.vertices = std::move(verts);
  f.normals = std::move(normals);
  std::vector<LatticeVector> pts = f.normals;
  pts.push_back(LatticeVector::zero(pts.front().dim()));
  std::vector<Point> hull_pts;
  for (const auto& p : pts) hull_pts.push_back(to_point(p));
  PointHull hull(hull_pts);
  for (const auto& lp : lattice_points_in_polytope(pts)) {
    if (!hull.is_vertex(to_point(lp))) {
      f.mild = false;
      f.offending = lp;
      break;
    }
  }
  return f;
}

}  // namespace

std::vector<FaceMildness> mild_faces_check(const OmegaDomain& domain) {
  const auto& g = domain.geometry();
  std::vector<FaceMildness> out;
  auto normals_containing = [&](const std::vector<std::size_t>& vs) {
    std::vector<LatticeVector> ns;
    for (const auto& f : g.facets) {
      bool all = true;
      for (auto v : vs) {
        if (std::find(f.vertices.begin(), f.vertices.end(), v) == f.vertices.end()) {
          all = false;
          break;
        }
      }
      if (all) ns.push_back(g.halfspaces[f.halfspace].normal);
    }
    std::sort(ns.begin(), ns.end());
    return ns;
  };
  if (g.dim >= 2) {
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      out.push_back(check_face(0, {v}, normals_containing({v})));
    }
  }
  if (g.dim == 3) {
    for (const auto& e : g.edges) {
      std::vector<std::size_t> vs{e[0], e[1]};
      out.push_back(check_face(1, vs, normals_containing(vs)));
    }
  }
  for (const auto& f : g.facets) {
    FaceMildness m;
    m.dim = g.dim - 1;
    m.vertices = f.vertices;
    m.normals = {g.halfspaces[f.halfspace].normal};
    m.mild = true;
    out.push_back(std::move(m));
  }
  return out;
}

bool all_faces_mild(const OmegaDomain& domain) {
  for (const auto& f : mild_faces_check(domain)) {
    if (!f.mild) return false;
  }
  return true;
}

}  // namespace tropwave
