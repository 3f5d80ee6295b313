#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tropwave/lattice.hpp"
#include "tropwave/scalar.hpp"

namespace tropwave {

/// {z : normal . z >= offset} with a primitive integer normal.
struct HalfSpace {
  LatticeVector normal;
  Scalar offset;

  /// Divides normal and offset by the content of `normal`. Throws on a zero normal.
  static HalfSpace make(const LatticeVector& normal, const Scalar& offset);

  Scalar slack(const Point& z) const { return dot(normal, z) - offset; }

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A compact full-dimensional polytope in R^n, n <= 3, with its face lattice.
///
/// Vertices are exact. In the plane they are listed counter-clockwise. Each
/// facet records the halfspace it lies on and its vertices (cyclically
/// ordered in dimension 3).
struct PolytopeGeometry {
  struct Facet {
    std::size_t halfspace = 0;
    std::vector<std::size_t> vertices;
  };

  std::size_t dim = 0;
  std::vector<HalfSpace> halfspaces;
  std::vector<bool> redundant;
  std::vector<Point> vertices;
  std::vector<Facet> facets;
  std::vector<std::array<std::size_t, 2>> edges;

  bool contains(const Point& z) const;
  bool on_boundary(const Point& z) const;
  bool interior(const Point& z) const { return contains(z) && !on_boundary(z); }
  /// Average of the vertices; lies in the interior.
  Point centroid() const;
  std::vector<HalfSpace> nonredundant_halfspaces() const;
  /// Indices of halfspaces (redundant ones included) tight at z.
  std::vector<std::size_t> tight_at(const Point& z) const;
  std::pair<Point, Point> bounding_box() const;
  std::size_t redundant_count() const;
};

/// Exact vertex enumeration by intersecting every n-subset of bounding
/// hyperplanes. Checks compactness and a non-empty interior by LP.
///
/// Throws GeometryError("degenerate domain") for an empty interior and
/// GeometryError("not compact") for an unbounded intersection.
PolytopeGeometry halfspaces_to_geometry(std::vector<HalfSpace> halfspaces, std::size_t n);

/// Intersects `base` with `cuts`, adding them one at a time. Returns nullopt
/// if the result has empty interior. Cuts that do not touch the current
/// polytope are skipped and not recorded, so only active constraints reach
/// the vertex solver.
std::optional<PolytopeGeometry> clip(const PolytopeGeometry& base, std::span<const HalfSpace> cuts);

struct MeasureResult {
  Scalar value;
  bool degenerate = false;
};

/// Exact area (n=2, shoelace) or volume (n=3, fan triangulation from a vertex).
/// Dimension 1 reports zero with the degenerate flag.
MeasureResult measure(const PolytopeGeometry& g);

/// Convex hull of finitely many exact points in R^n (n <= 3), of any affine
/// dimension. Supports exact membership and extreme-point queries.
class PointHull {
 public:
  explicit PointHull(std::vector<Point> points);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t affine_dim() const { return affine_dim_; }
  /// Extreme points, sorted lexicographically.
  const std::vector<Point>& vertices() const { return vertices_; }
  bool contains(const Point& z) const;
  bool is_vertex(const Point& z) const;
  /// Lebesgue measure in the affine hull's own coordinates (area of a
  /// triangle in 2-D, length of a segment in 1-D); requires affine_dim <= 2
  /// and ambient dimension equal to affine_dim.
  Scalar full_dim_measure() const;

 private:
  struct Facet {
    std::vector<Rational> normal;
    Rational offset;  // normal . z >= offset
  };

  void build_full(const std::vector<std::vector<Rational>>& pts);
  bool contains_projected(const std::vector<Rational>& z) const;
  std::vector<Rational> project(const Point& z) const;

  std::size_t ambient_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<Point> points_;
  std::vector<Point> vertices_;
  // Affine hull data: base point, row-reduced spanning directions, and the
  // coordinates kept when projecting.
  std::vector<Rational> base_;
  std::vector<std::vector<Rational>> directions_;
  std::vector<std::size_t> kept_coords_;
  // Projected hull (dimension affine_dim_).
  std::vector<std::vector<Rational>> projected_;
  std::vector<Facet> facets_;
  Rational lo_, hi_;  // affine_dim_ == 1
};

/// All integer points of conv(vertices), by bounding-box scan and exact
/// membership (boundary included). Sorted lexicographically.
std::vector<LatticeVector> lattice_points_in_polytope(std::span<const LatticeVector> vertices);

/// Rank of a set of exact vectors.
std::size_t rank(std::vector<std::vector<Rational>> rows);

/// Solves the square system A x = b exactly; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b);

std::vector<Rational> to_rationals(const Point& z);
Point to_point(const std::vector<Rational>& v);

}  // namespace tropwave
