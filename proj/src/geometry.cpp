#include "tropwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "tropwave/lp.hpp"

namespace tropwave {

HalfSpace HalfSpace::make(const LatticeVector& normal, const Scalar& offset) {
  const std::int64_t g = normal.content();
  if (g == 0) throw std::invalid_argument("halfspace normal must be non-zero");
  if (g == 1) return HalfSpace{normal, offset};
  return HalfSpace{normal.primitive(), offset / static_cast<long long>(g)};
}

std::vector<Rational> to_rationals(const Point& z) {
  std::vector<Rational> r;
  r.reserve(z.size());
  for (const auto& s : z) r.push_back(s.rational());
  return r;
}

Point to_point(const std::vector<Rational>& v) {
  Point p;
  p.reserve(v.size());
  for (const auto& r : v) p.emplace_back(r);
  return p;
}

std::size_t rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// ---------------------------------------------------------------------------
// PolytopeGeometry

bool PolytopeGeometry::contains(const Point& z) const {
  for (const auto& h : halfspaces) {
    if (h.slack(z).sign() < 0) return false;
  }
  return true;
}

bool PolytopeGeometry::on_boundary(const Point& z) const {
  if (!contains(z)) return false;
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (!redundant[i] && halfspaces[i].slack(z).sign() == 0) return true;
  }
  return false;
}

Point PolytopeGeometry::centroid() const {
  Point c(dim, Scalar());
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < dim; ++i) c[i] += v[i];
  }
  for (auto& x : c) x /= static_cast<long long>(vertices.size());
  return c;
}

std::vector<HalfSpace> PolytopeGeometry::nonredundant_halfspaces() const {
  std::vector<HalfSpace> out;
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (!redundant[i]) out.push_back(halfspaces[i]);
  }
  return out;
}

std::vector<std::size_t> PolytopeGeometry::tight_at(const Point& z) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (halfspaces[i].slack(z).sign() == 0) out.push_back(i);
  }
  return out;
}

std::pair<Point, Point> PolytopeGeometry::bounding_box() const {
  Point lo = vertices.front();
  Point hi = vertices.front();
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (hi[i] < v[i]) hi[i] = v[i];
    }
  }
  return {lo, hi};
}

std::size_t PolytopeGeometry::redundant_count() const {
  return static_cast<std::size_t>(std::count(redundant.begin(), redundant.end(), true));
}

namespace {

using RVec = std::vector<Rational>;

Rational cross2(const RVec& a, const RVec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Counter-clockwise angular order around the origin, starting at angle 0.
bool angle_less(const RVec& a, const RVec& b) {
  auto half = [](const RVec& v) { return (v[1] < 0 || (v[1] == 0 && v[0] < 0)) ? 1 : 0; };
  const int ha = half(a);
  const int hb = half(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

// Orders the 2-D points (given by index) counter-clockwise around their centroid.
std::vector<std::size_t> ccw_order(const std::vector<RVec>& pts, std::vector<std::size_t> idx) {
  RVec c(2);
  for (auto i : idx) {
    c[0] += pts[i][0];
    c[1] += pts[i][1];
  }
  c[0] /= static_cast<long>(idx.size());
  c[1] /= static_cast<long>(idx.size());
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    RVec da{pts[a][0] - c[0], pts[a][1] - c[1]};
    RVec db{pts[b][0] - c[0], pts[b][1] - c[1]};
    return angle_less(da, db);
  });
  return idx;
}

std::size_t affine_rank(const std::vector<RVec>& pts, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 0;
  std::vector<RVec> diffs;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    RVec d(pts[idx[0]].size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = pts[idx[k]][i] - pts[idx[0]][i];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

Rational slack_r(const HalfSpace& h, const RVec& z) {
  Rational s = -h.offset.rational();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (h.normal[i] != 0) s += z[i] * h.normal[i];
  }
  return s;
}

// Vertex enumeration plus face lattice for a polytope already known to be
// compact and full-dimensional.
PolytopeGeometry assemble(std::size_t n, std::vector<HalfSpace> hs) {
  PolytopeGeometry g;
  g.dim = n;
  g.halfspaces = std::move(hs);
  const std::size_t m = g.halfspaces.size();

  std::vector<RVec> verts;
  std::vector<std::size_t> subset(n);
  // Iterate over all n-subsets in lexicographic order.
  for (std::size_t i = 0; i < n; ++i) subset[i] = i;
  if (m >= n) {
    for (;;) {
      std::vector<RVec> a(n, RVec(n));
      RVec b(n);
      for (std::size_t r = 0; r < n; ++r) {
        const auto& h = g.halfspaces[subset[r]];
        for (std::size_t c = 0; c < n; ++c) a[r][c] = h.normal[c];
        b[r] = h.offset.rational();
      }
      if (auto sol = solve_square(std::move(a), std::move(b))) {
        bool ok = true;
        for (const auto& h : g.halfspaces) {
          if (slack_r(h, *sol) < 0) {
            ok = false;
            break;
          }
        }
        if (ok) verts.push_back(std::move(*sol));
      }
      std::size_t k = n;
      while (k > 0 && subset[k - 1] == m - n + (k - 1)) --k;
      if (k == 0) break;
      ++subset[k - 1];
      for (std::size_t j = k; j < n; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  // Tight sets and redundancy.
  std::vector<std::vector<std::size_t>> tight(m);
  for (std::size_t v = 0; v < verts.size(); ++v) {
    for (std::size_t h = 0; h < m; ++h) {
      if (slack_r(g.halfspaces[h], verts[v]) == 0) tight[h].push_back(v);
    }
  }
  g.redundant.assign(m, false);
  std::set<std::vector<std::size_t>> seen_facets;
  for (std::size_t h = 0; h < m; ++h) {
    const bool spans = tight[h].size() >= n && affine_rank(verts, tight[h]) == n - 1;
    if (!spans || !seen_facets.insert(tight[h]).second) g.redundant[h] = true;
  }

  std::vector<std::size_t> order(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (n == 2) {
    order = ccw_order(verts, order);
    // Start the cycle at the lexicographically smallest vertex.
    auto first = std::min_element(order.begin(), order.end(),
                                  [&](std::size_t a, std::size_t b) { return verts[a] < verts[b]; });
    std::rotate(order.begin(), first, order.end());
  }
  std::vector<std::size_t> new_index(verts.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_index[order[i]] = i;
  for (auto i : order) g.vertices.push_back(to_point(verts[i]));
  for (auto& t : tight) {
    for (auto& v : t) v = new_index[v];
  }

  for (std::size_t h = 0; h < m; ++h) {
    if (g.redundant[h]) continue;
    PolytopeGeometry::Facet f;
    f.halfspace = h;
    f.vertices = tight[h];
    if (n == 2) {
      std::sort(f.vertices.begin(), f.vertices.end());
      // Keep CCW orientation along the boundary.
      if (f.vertices.size() == 2 && f.vertices[0] == 0 && f.vertices[1] == verts.size() - 1) {
        std::swap(f.vertices[0], f.vertices[1]);
      }
    } else if (n == 3) {
      // Drop the coordinate with the largest normal component and sort
      // around the facet centroid in the remaining plane.
      const auto& nrm = g.halfspaces[h].normal;
      std::size_t drop = 0;
      for (std::size_t c = 1; c < 3; ++c) {
        if (std::abs(nrm[c]) > std::abs(nrm[drop])) drop = c;
      }
      std::vector<RVec> proj;
      for (auto v : f.vertices) {
        RVec p;
        for (std::size_t c = 0; c < 3; ++c) {
          if (c != drop) p.push_back(g.vertices[v][c].rational());
        }
        proj.push_back(std::move(p));
      }
      std::vector<std::size_t> local(f.vertices.size());
      for (std::size_t i = 0; i < local.size(); ++i) local[i] = i;
      local = ccw_order(proj, local);
      std::vector<std::size_t> ordered;
      for (auto i : local) ordered.push_back(f.vertices[i]);
      f.vertices = std::move(ordered);
    }
    g.facets.push_back(std::move(f));
  }

  std::set<std::array<std::size_t, 2>> edges;
  if (n == 1) {
    if (g.vertices.size() == 2) edges.insert({0, 1});
  } else if (n == 2) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      std::size_t j = (i + 1) % g.vertices.size();
      edges.insert({std::min(i, j), std::max(i, j)});
    }
  } else {
    for (const auto& f : g.facets) {
      for (std::size_t i = 0; i < f.vertices.size(); ++i) {
        std::size_t a = f.vertices[i];
        std::size_t b = f.vertices[(i + 1) % f.vertices.size()];
        edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::vector<LinearConstraint> as_constraints(const std::vector<HalfSpace>& hs, std::size_t n,
                                             Relation rel) {
  std::vector<LinearConstraint> out;
  for (const auto& h : hs) {
    LinearConstraint c;
    c.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = h.normal[i];
    c.rel = rel;
    c.rhs = h.offset.rational();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

PolytopeGeometry halfspaces_to_geometry(std::vector<HalfSpace> halfspaces, std::size_t n) {
  if (n < 1 || n > 3) throw std::invalid_argument("halfspaces_to_geometry: n must be 1, 2 or 3");
  for (auto& h : halfspaces) {
    if (h.normal.dim() != n) throw std::invalid_argument("halfspace dimension mismatch");
    if (!h.offset.is_exact()) throw ModeMismatch();
    h = HalfSpace::make(h.normal, h.offset);
  }
  if (halfspaces.empty()) throw GeometryError("not compact");

  // Non-empty interior: all constraints strictly satisfiable.
  auto strict = as_constraints(halfspaces, n, Relation::gt);
  if (!lp_feasible(strict, n).feasible) throw GeometryError("degenerate domain");

  // Compactness: no non-zero recession direction d with normal . d >= 0.
  auto rec = as_constraints(halfspaces, n, Relation::ge);
  for (auto& c : rec) c.rhs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (int s : {1, -1}) {
      auto sys = rec;
      LinearConstraint dir;
      dir.coeffs.assign(n, Rational(0));
      dir.coeffs[j] = s;
      dir.rel = Relation::ge;
      dir.rhs = 1;
      sys.push_back(std::move(dir));
      if (lp_feasible(sys, n).feasible) throw GeometryError("not compact");
    }
  }
  return assemble(n, std::move(halfspaces));
}

namespace {

// Planar clip on the vertex cycle: O(V) per cut, one assemble at the end.
std::optional<PolytopeGeometry> clip_polygon(const PolytopeGeometry& base, std::span<const HalfSpace> cuts) {
  std::vector<HalfSpace> active = base.nonredundant_halfspaces();
  std::vector<RVec> poly;
  std::vector<std::array<double, 2>> pd;
  auto push = [&](std::vector<RVec>& ps, std::vector<std::array<double, 2>>& ds, RVec v) {
    ds.push_back({to_double(v[0]), to_double(v[1])});
    ps.push_back(std::move(v));
  };
  for (const auto& v : base.vertices) push(poly, pd, to_rationals(v));

  // Float pre-pass: a cut that stays clear of the float clip by a relative
  // margin cannot touch the exact one, so only the others go to the exact loop.
  auto screen = [](const HalfSpace& h, const std::vector<std::array<double, 2>>& ds) {
    const double off = h.offset.to_double();
    const double n0 = static_cast<double>(h.normal[0]), n1 = static_cast<double>(h.normal[1]);
    double lo = std::numeric_limits<double>::infinity();
    double scale = std::abs(off);
    for (const auto& v : ds) {
      const double a = n0 * v[0], b = n1 * v[1];
      lo = std::min(lo, a + b - off);
      scale = std::max({scale, std::abs(a), std::abs(b)});
    }
    return lo > 1e-9 * (1.0 + scale);
  };
  std::vector<std::array<double, 2>> fp = pd;
  for (const auto& h : cuts) {
    if (fp.empty()) break;
    const double off = h.offset.to_double();
    const double n0 = static_cast<double>(h.normal[0]), n1 = static_cast<double>(h.normal[1]);
    std::vector<double> s;
    for (const auto& v : fp) s.push_back(n0 * v[0] + n1 * v[1] - off);
    std::vector<std::array<double, 2>> next;
    for (std::size_t i = 0; i < fp.size(); ++i) {
      const std::size_t j = (i + 1) % fp.size();
      if (s[i] >= 0) next.push_back(fp[i]);
      if ((s[i] > 0 && s[j] < 0) || (s[i] < 0 && s[j] > 0)) {
        const double t = s[i] / (s[i] - s[j]);
        next.push_back({fp[i][0] + t * (fp[j][0] - fp[i][0]), fp[i][1] + t * (fp[j][1] - fp[i][1])});
      }
    }
    fp = std::move(next);
  }
  std::vector<HalfSpace> near;
  if (fp.size() >= 3) {
    for (const auto& h : cuts) {
      if (!screen(h, fp)) near.push_back(h);
    }
    cuts = near;
  }

  bool changed = false;
  std::vector<Rational> sl;
  for (const auto& h : cuts) {
    if (screen(h, pd)) continue;
    sl.clear();
    bool all_ok = true, any_positive = false;
    for (const auto& v : poly) {
      sl.push_back(slack_r(h, v));
      if (sl.back() < 0) all_ok = false;
      if (sl.back() > 0) any_positive = true;
    }
    if (!any_positive) return std::nullopt;
    if (all_ok) continue;
    std::vector<RVec> next;
    std::vector<std::array<double, 2>> nd;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = (i + 1) % k;
      if (sl[i] >= 0) {
        next.push_back(poly[i]);
        nd.push_back(pd[i]);
      }
      if ((sl[i] > 0 && sl[j] < 0) || (sl[i] < 0 && sl[j] > 0)) {
        const Rational t = sl[i] / (sl[i] - sl[j]);
        push(next, nd, {poly[i][0] + t * (poly[j][0] - poly[i][0]), poly[i][1] + t * (poly[j][1] - poly[i][1])});
      }
    }
    poly = std::move(next);
    pd = std::move(nd);
    active.push_back(HalfSpace::make(h.normal, h.offset));
    changed = true;
  }
  if (!changed) return base;
  // Keep the halfspaces that still support an edge, in their original order.
  std::vector<HalfSpace> support;
  for (const auto& h : active) {
    std::size_t tight = 0;
    for (const auto& v : poly) tight += slack_r(h, v) == 0;
    if (tight >= 2) support.push_back(h);
  }
  return assemble(2, std::move(support));
}

}  // namespace

std::optional<PolytopeGeometry> clip(const PolytopeGeometry& base, std::span<const HalfSpace> cuts) {
  if (base.dim == 2) return clip_polygon(base, cuts);
  PolytopeGeometry cur = base;
  std::vector<HalfSpace> active = base.nonredundant_halfspaces();
  std::vector<std::vector<double>> vd;
  auto refresh = [&] {
    vd.assign(cur.vertices.size(), std::vector<double>(cur.dim));
    for (std::size_t v = 0; v < cur.vertices.size(); ++v) {
      for (std::size_t i = 0; i < cur.dim; ++i) vd[v][i] = cur.vertices[v][i].to_double();
    }
  };
  refresh();
  for (const auto& h : cuts) {
    // A cut that clears every vertex by a wide margin in double precision
    // cannot change the polytope; only the rest needs exact slacks.
    const double off = h.offset.to_double();
    double lo = std::numeric_limits<double>::infinity();
    double scale = std::abs(off);
    for (const auto& v : vd) {
      double s = -off;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = static_cast<double>(h.normal[i]) * v[i];
        s += t;
        scale = std::max(scale, std::abs(t));
      }
      lo = std::min(lo, s);
    }
    if (lo > 1e-9 * (1.0 + scale)) continue;

    bool all_ok = true;
    bool any_positive = false;
    for (const auto& v : cur.vertices) {
      const int s = h.slack(v).sign();
      if (s < 0) all_ok = false;
      if (s > 0) any_positive = true;
    }
    if (!any_positive) return std::nullopt;
    if (all_ok) continue;
    active.push_back(HalfSpace::make(h.normal, h.offset));
    cur = assemble(base.dim, active);
    active = cur.nonredundant_halfspaces();
    refresh();
  }
  return cur;
}

MeasureResult measure(const PolytopeGeometry& g) {
  if (g.dim == 2) {
    if (g.vertices.size() < 3) return {Scalar(), true};
    Rational twice = 0;
    const auto& v = g.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[i];
      const auto& b = v[(i + 1) % v.size()];
      twice += a[0].rational() * b[1].rational() - a[1].rational() * b[0].rational();
    }
    if (twice < 0) twice = -twice;
    return {Scalar(Rational(twice / 2)), twice == 0};
  }
  if (g.dim == 3) {
    if (g.vertices.size() < 4) return {Scalar(), true};
    const RVec apex = to_rationals(g.vertices.front());
    Rational six = 0;
    for (const auto& f : g.facets) {
      if (std::find(f.vertices.begin(), f.vertices.end(), 0) != f.vertices.end()) continue;
      const RVec p0 = to_rationals(g.vertices[f.vertices[0]]);
      for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
        const RVec p1 = to_rationals(g.vertices[f.vertices[i]]);
        const RVec p2 = to_rationals(g.vertices[f.vertices[i + 1]]);
        RVec a(3), b(3), c(3);
        for (std::size_t k = 0; k < 3; ++k) {
          a[k] = p0[k] - apex[k];
          b[k] = p1[k] - apex[k];
          c[k] = p2[k] - apex[k];
        }
        Rational det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                       a[2] * (b[0] * c[1] - b[1] * c[0]);
        six += det < 0 ? Rational(-det) : det;
      }
    }
    return {Scalar(Rational(six / 6)), six == 0};
  }
  return {Scalar(), true};
}

// ---------------------------------------------------------------------------
// PointHull

PointHull::PointHull(std::vector<Point> points) {
  if (points.empty()) return;
  ambient_ = points.front().size();
  std::vector<RVec> pts;
  for (const auto& p : points) pts.push_back(to_rationals(p));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (const auto& p : pts) points_.push_back(to_point(p));

  base_ = pts.front();
  // Row-reduce the difference vectors to find an independent spanning set.
  std::vector<RVec> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    RVec d(ambient_);
    for (std::size_t i = 0; i < ambient_; ++i) d[i] = pts[k][i] - base_[i];
    diffs.push_back(std::move(d));
  }
  for (auto& d : diffs) {
    auto trial = directions_;
    trial.push_back(d);
    if (rank(trial) > directions_.size()) directions_.push_back(d);
  }
  affine_dim_ = directions_.size();

  // Coordinates whose projection keeps the directions independent.
  for (std::size_t c = 0; c < ambient_ && kept_coords_.size() < affine_dim_; ++c) {
    auto trial = kept_coords_;
    trial.push_back(c);
    std::vector<RVec> cols;
    for (const auto& d : directions_) {
      RVec row;
      for (auto t : trial) row.push_back(d[t]);
      cols.push_back(std::move(row));
    }
    if (rank(cols) == trial.size()) kept_coords_ = std::move(trial);
  }

  for (const auto& p : pts) {
    RVec q;
    for (auto c : kept_coords_) q.push_back(p[c]);
    projected_.push_back(std::move(q));
  }

  if (affine_dim_ == 0) {
    vertices_ = points_;
    return;
  }
  if (affine_dim_ == 1) {
    lo_ = projected_.front()[0];
    hi_ = lo_;
    std::size_t ilo = 0, ihi = 0;
    for (std::size_t i = 0; i < projected_.size(); ++i) {
      if (projected_[i][0] < lo_) lo_ = projected_[i][0], ilo = i;
      if (hi_ < projected_[i][0]) hi_ = projected_[i][0], ihi = i;
    }
    vertices_ = {points_[ilo], points_[ihi]};
    std::sort(vertices_.begin(), vertices_.end());
    return;
  }
  build_full(projected_);
}

void PointHull::build_full(const std::vector<RVec>& pts) {
  const std::size_t d = affine_dim_;
  const std::size_t m = pts.size();
  std::vector<std::size_t> subset(d);
  for (std::size_t i = 0; i < d; ++i) subset[i] = i;
  std::set<std::pair<RVec, Rational>> seen;
  for (;;) {
    // Hyperplane through the d points: normal orthogonal to their differences.
    std::vector<RVec> diffs;
    for (std::size_t k = 1; k < d; ++k) {
      RVec v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = pts[subset[k]][i] - pts[subset[0]][i];
      diffs.push_back(std::move(v));
    }
    RVec normal(d);
    bool valid = true;
    if (d == 2) {
      normal = {-diffs[0][1], diffs[0][0]};
      valid = normal[0] != 0 || normal[1] != 0;
    } else {
      normal = {diffs[0][1] * diffs[1][2] - diffs[0][2] * diffs[1][1],
                diffs[0][2] * diffs[1][0] - diffs[0][0] * diffs[1][2],
                diffs[0][0] * diffs[1][1] - diffs[0][1] * diffs[1][0]};
      valid = normal[0] != 0 || normal[1] != 0 || normal[2] != 0;
    }
    if (valid) {
      Rational off = 0;
      for (std::size_t i = 0; i < d; ++i) off += normal[i] * pts[subset[0]][i];
      int side = 0;
      bool ok = true;
      for (const auto& p : pts) {
        Rational s = -off;
        for (std::size_t i = 0; i < d; ++i) s += normal[i] * p[i];
        const int sg = s.sign();
        if (sg == 0) continue;
        if (side == 0) side = sg;
        if (sg != side) {
          ok = false;
          break;
        }
      }
      if (ok && side != 0) {
        if (side < 0) {
          for (auto& x : normal) x = -x;
          off = -off;
        }
        // Normalise so equal facets compare equal.
        Rational scale = 0;
        for (const auto& x : normal) {
          if (x != 0) {
            scale = x < 0 ? Rational(-x) : x;
            break;
          }
        }
        for (auto& x : normal) x /= scale;
        off /= scale;
        if (seen.insert({normal, off}).second) facets_.push_back({normal, off});
      }
    }
    std::size_t k = d;
    while (k > 0 && subset[k - 1] == m - d + (k - 1)) --k;
    if (k == 0) break;
    ++subset[k - 1];
    for (std::size_t j = k; j < d; ++j) subset[j] = subset[j - 1] + 1;
  }

  // A point is extreme iff the facets tight at it have normals of full rank.
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<RVec> normals;
    for (const auto& f : facets_) {
      Rational s = -f.offset;
      for (std::size_t c = 0; c < d; ++c) s += f.normal[c] * pts[i][c];
      if (s == 0) normals.push_back(f.normal);
    }
    if (rank(normals) == d) vertices_.push_back(points_[i]);
  }
}

std::vector<Rational> PointHull::project(const Point& z) const {
  RVec q;
  for (auto c : kept_coords_) q.push_back(z[c].rational());
  return q;
}

bool PointHull::contains_projected(const RVec& z) const {
  if (affine_dim_ == 0) return true;
  if (affine_dim_ == 1) return lo_ <= z[0] && z[0] <= hi_;
  for (const auto& f : facets_) {
    Rational s = -f.offset;
    for (std::size_t c = 0; c < affine_dim_; ++c) s += f.normal[c] * z[c];
    if (s < 0) return false;
  }
  return true;
}

bool PointHull::contains(const Point& z) const {
  if (points_.empty()) return false;
  if (z.size() != ambient_) throw std::invalid_argument("PointHull::contains: dimension mismatch");
  // Affine hull membership: z - base must stay in the span of directions_.
  RVec diff(ambient_);
  bool zero = true;
  for (std::size_t i = 0; i < ambient_; ++i) {
    diff[i] = z[i].rational() - base_[i];
    zero = zero && diff[i] == 0;
  }
  if (affine_dim_ == 0) return zero;
  if (affine_dim_ < ambient_) {
    auto trial = directions_;
    trial.push_back(diff);
    if (rank(std::move(trial)) > affine_dim_) return false;
  }
  return contains_projected(project(z));
}

bool PointHull::is_vertex(const Point& z) const {
  return std::find(vertices_.begin(), vertices_.end(), z) != vertices_.end();
}

Scalar PointHull::full_dim_measure() const {
  if (affine_dim_ != ambient_) throw std::logic_error("full_dim_measure: hull is not full-dimensional");
  if (affine_dim_ == 0) return Scalar();
  if (affine_dim_ == 1) return Scalar(Rational(hi_ - lo_));
  if (affine_dim_ == 2) {
    std::vector<RVec> pts;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      pts.push_back(to_rationals(vertices_[i]));
      idx.push_back(i);
    }
    idx = ccw_order(pts, idx);
    Rational twice = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto& a = pts[idx[i]];
      const auto& b = pts[idx[(i + 1) % idx.size()]];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    return Scalar(Rational(twice / 2));
  }
  std::vector<HalfSpace> hs;
  for (const auto& f : facets_) {
    // Facet normals are rational; scale to integers before building halfspaces.
    BigInt lcm = 1;
    for (const auto& x : f.normal) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(x));
    LatticeVector nrm(3);
    for (std::size_t c = 0; c < 3; ++c) nrm[c] = (f.normal[c] * lcm).convert_to<std::int64_t>();
    hs.push_back(HalfSpace::make(nrm, Scalar(Rational(f.offset * lcm))));
  }
  return measure(halfspaces_to_geometry(std::move(hs), 3)).value;
}

std::vector<LatticeVector> lattice_points_in_polytope(std::span<const LatticeVector> vertices) {
  if (vertices.empty()) return {};
  const std::size_t n = vertices.front().dim();
  std::vector<Point> pts;
  for (const auto& v : vertices) pts.push_back(to_point(v));
  PointHull hull(std::move(pts));
  LatticeVector lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  std::vector<LatticeVector> out;
  LatticeVector cur = lo;
  for (;;) {
    if (hull.contains(to_point(cur))) out.push_back(cur);
    std::size_t k = n;
    while (k > 0) {
      if (cur[k - 1] < hi[k - 1]) {
        ++cur[k - 1];
        for (std::size_t j = k; j < n; ++j) cur[j] = lo[j];
        break;
      }
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

}  // namespace tropwave
