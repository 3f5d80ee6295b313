#pragma once

#include <optional>
#include <vector>

#include "tropwave/series.hpp"

namespace tropwave {

/// A face of a linearity region: a point, a segment, a polygon (listed
/// cyclically), or a full region.
struct FaceGeometry {
  std::size_t dim = 0;
  std::vector<Point> vertices;
};

/// A set B_z of exponents simultaneously minimal on the relative interior of
/// a face.
struct DualCell {
  /// Sorted.
  std::vector<LatticeVector> exponents;
  FaceGeometry face;
  /// A relative-interior point of the face with argmin exactly `exponents`.
  Point witness;

  bool on_corner_locus() const { return exponents.size() >= 2; }
};

/// Every cell of the decomposition of the domain interior by f: the regions
/// themselves and every face of a region meeting the interior, deduplicated
/// by B_z and sorted by it. Needs a polytope domain of dimension 2 or 3.
std::vector<DualCell> corner_locus_cells(const TropicalSeries& f);
/// Only the cells with |B_z| >= 2.
std::vector<DualCell> corner_locus(const TropicalSeries& f);

struct CellVerdict {
  std::vector<LatticeVector> exponents;
  bool mild = true;
  std::optional<LatticeVector> offending;
};

struct MildnessReport {
  std::vector<CellVerdict> cells;
  bool mild = true;
  /// Lattice points of conv(small support) that are not strictly minimal
  /// anywhere. Diagnostic only: the domain cuts the subdivision off, so a
  /// mild series may still leave some of them unrealised.
  std::vector<LatticeVector> unrealised;

  const CellVerdict* first_offence() const;
};

/// A cell is mild when conv(B_z) has no lattice points besides its vertices.
MildnessReport is_mild(const TropicalSeries& f);
/// The same test for a single exponent set.
CellVerdict cell_mildness(const std::vector<LatticeVector>& exponents);

struct CornerSegment {
  Point a, b;
  std::vector<LatticeVector> exponents;
};

struct CornerPolygon {
  std::vector<Point> vertices;
  std::vector<LatticeVector> exponents;
};

/// Corner locus as drawable pieces with exact coordinates: segments in the
/// plane, polygons (and their edges as segments) in space.
struct CornerComplex {
  std::size_t dim = 0;
  std::vector<Point> vertices;
  std::vector<CornerSegment> segments;
  std::vector<CornerPolygon> polygons;
};

CornerComplex extract_geometry(const TropicalSeries& f);

}  // namespace tropwave
