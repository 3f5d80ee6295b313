#include "tropwave/subdivision.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropwave {

namespace {

Point average(const std::vector<Point>& pts) {
  Point c(pts.front().size(), Scalar());
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  }
  for (auto& x : c) x /= static_cast<long long>(pts.size());
  return c;
}

// Faces of one region as vertex lists, lowest dimension first.
std::vector<FaceGeometry> region_faces(const PolytopeGeometry& g) {
  std::vector<FaceGeometry> out;
  for (const auto& v : g.vertices) out.push_back({0, {v}});
  for (const auto& e : g.edges) out.push_back({1, {g.vertices[e[0]], g.vertices[e[1]]}});
  if (g.dim == 3) {
    for (const auto& f : g.facets) {
      FaceGeometry face{2, {}};
      for (auto v : f.vertices) face.vertices.push_back(g.vertices[v]);
      out.push_back(std::move(face));
    }
  }
  out.push_back({g.dim, g.vertices});
  return out;
}

}  // namespace

std::vector<DualCell> corner_locus_cells(const TropicalSeries& f) {
  if (f.domain().kind() != OmegaDomain::Kind::polytope || f.dim() < 2 || f.dim() > 3) {
    throw std::invalid_argument("corner_locus_cells needs a polytope domain of dimension 2 or 3");
  }
  const OmegaDomain& domain = f.domain();
  std::map<std::vector<LatticeVector>, DualCell> cells;
  std::set<std::vector<Rational>> seen_witness;
  for (const auto& region : f.regions()->regions) {
    for (auto& face : region_faces(region.geometry)) {
      Point w = face.vertices.size() == 1 ? face.vertices.front() : average(face.vertices);
      if (domain.on_boundary(w)) continue;
      if (!seen_witness.insert(to_rationals(w)).second) continue;
      auto b = f.argmin_set(w);
      if (cells.count(b)) continue;
      cells.emplace(b, DualCell{b, std::move(face), std::move(w)});
    }
  }
  std::vector<DualCell> out;
  out.reserve(cells.size());
  for (auto& [b, c] : cells) out.push_back(std::move(c));
  return out;
}

std::vector<DualCell> corner_locus(const TropicalSeries& f) {
  auto cells = corner_locus_cells(f);
  std::erase_if(cells, [](const DualCell& c) { return !c.on_corner_locus(); });
  return cells;
}

CellVerdict cell_mildness(const std::vector<LatticeVector>& exponents) {
  CellVerdict v;
  v.exponents = exponents;
  if (exponents.size() < 2) return v;
  std::vector<Point> pts;
  for (const auto& q : exponents) pts.push_back(to_point(q));
  PointHull hull(std::move(pts));
  for (const auto& lp : lattice_points_in_polytope(exponents)) {
    if (!hull.is_vertex(to_point(lp))) {
      v.mild = false;
      v.offending = lp;
      break;
    }
  }
  return v;
}

const CellVerdict* MildnessReport::first_offence() const {
  for (const auto& c : cells) {
    if (!c.mild) return &c;
  }
  return nullptr;
}

MildnessReport is_mild(const TropicalSeries& f) {
  MildnessReport r;
  for (const auto& cell : corner_locus(f)) {
    r.cells.push_back(cell_mildness(cell.exponents));
    if (!r.cells.back().mild) r.mild = false;
  }
  std::vector<LatticeVector> support;
  for (const auto& m : small_support(f)) support.push_back(m.q);
  const std::set<LatticeVector> in_support(support.begin(), support.end());
  for (const auto& q : lattice_points_in_polytope(support)) {
    if (!in_support.count(q)) r.unrealised.push_back(q);
  }
  return r;
}

CornerComplex extract_geometry(const TropicalSeries& f) {
  CornerComplex cx;
  cx.dim = f.dim();
  for (const auto& cell : corner_locus(f)) {
    const auto& v = cell.face.vertices;
    switch (cell.face.dim) {
      case 0:
        cx.vertices.push_back(v.front());
        break;
      case 1:
        cx.segments.push_back({v[0], v[1], cell.exponents});
        break;
      case 2:
        if (cx.dim == 3) cx.polygons.push_back({v, cell.exponents});
        break;
      default:
        break;
    }
  }
  return cx;
}

}  // namespace tropwave
