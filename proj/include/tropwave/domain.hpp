#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "tropwave/geometry.hpp"

namespace tropwave {

/// Raised when an operation needs an interior point and gets a boundary or
/// exterior one.
class NotInterior : public std::domain_error {
 public:
  explicit NotInterior(const std::string& what) : std::domain_error("not interior: " + what) {}
};

struct WeightedDistance {
  Scalar value;
  /// Non-zero exponents attaining the minimum; empty at boundary points.
  std::vector<LatticeVector> argmin;
  bool boundary = false;
};

/// A compact convex domain with non-empty interior.
///
/// Polytope domains are exact. Ball and support-oracle domains are
/// approximate, because their support values are irrational in general.
/// The support-value table is filled lazily and shared by all readers.
class OmegaDomain {
 public:
  enum class Kind { polytope, ball, oracle };
  /// q -> inf over the domain of q . z
  using SupportFn = std::function<double(const LatticeVector&)>;
  /// z -> signed Euclidean distance to the boundary (positive inside).
  using DistanceFn = std::function<double(const std::vector<double>&)>;

  static std::shared_ptr<const OmegaDomain> polytope(std::vector<HalfSpace> halfspaces, std::size_t n,
                                                     std::string name = "");
  static std::shared_ptr<const OmegaDomain> ball(const Point& center, const Scalar& radius,
                                                 std::string name = "");
  static std::shared_ptr<const OmegaDomain> oracle(std::size_t n, SupportFn support, DistanceFn distance,
                                                   std::string name = "");

  OmegaDomain(const OmegaDomain&) = delete;
  OmegaDomain& operator=(const OmegaDomain&) = delete;

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  NumericMode mode() const {
    return kind_ == Kind::polytope ? NumericMode::exact : NumericMode::approximate;
  }
  const std::string& name() const { return name_; }
  /// Absolute tie tolerance for approximate domains.
  double tolerance() const { return 1e-9; }

  const PolytopeGeometry& geometry() const;
  const Point& center() const { return center_; }
  const Scalar& radius() const { return radius_; }

  /// c_q = inf over the domain of q . z.
  Scalar support_value(const LatticeVector& q) const;
  /// l^q(z) = q . z - c_q.
  Scalar default_value(const LatticeVector& q, const Point& z) const;

  bool contains(const Point& z) const;
  bool on_boundary(const Point& z) const;
  bool interior(const Point& z) const { return contains(z) && !on_boundary(z); }

  /// Positive lower bound on the Euclidean distance from z to the boundary.
  /// Throws NotInterior for boundary and exterior points.
  Scalar boundary_distance_lb(const Point& z) const;

  /// Primitive normals used to seed upper bounds: the facet normals of a
  /// polytope, the coordinate directions for other domains.
  const std::vector<LatticeVector>& seed_normals() const { return seed_normals_; }

  /// Calls visit(q, l^q(z)) for every q in Z^n (zero included) with
  /// l^q(z) <= bound, in lexicographic order of q. Exact for polytopes; for
  /// approximate domains the test is l^q(z) <= bound + tolerance.
  ///
  /// Every candidate satisfies |q| <= bound / R with R the boundary distance
  /// bound, which keeps the scan finite. Throws ResourceError when more than
  /// `cap` lattice points would have to be examined.
  void for_each_default_within(const Point& z, const Scalar& bound,
                               const std::function<void(const LatticeVector&, const Scalar&)>& visit,
                               std::size_t cap = kDefaultLatticeCap) const;

  /// l(z) = min over q != 0 of l^q(z), with the minimising exponents.
  WeightedDistance weighted_distance(const Point& z) const;

  /// Area or volume (exact for polytopes, pi r^2 style for balls).
  Scalar measure() const;

  /// Structural equality: same kind and the same defining data.
  bool same_as(const OmegaDomain& other) const;

  /// A point strictly inside.
  Point interior_point() const;

  /// Converts a point to the domain's numeric mode. Point-taking members of
  /// approximate domains and series evaluation apply it themselves.
  Point adapt(const Point& z) const;

 private:
  OmegaDomain() = default;
  void scan_polytope(const Point& z, const Scalar& bound,
                     const std::function<void(const LatticeVector&, const Scalar&)>& visit,
                     std::size_t cap) const;

  Kind kind_ = Kind::polytope;
  std::size_t dim_ = 0;
  std::string name_;
  std::optional<PolytopeGeometry> geometry_;
  std::vector<HalfSpace> facets_;
  std::vector<Rational> facet_norm_ub_;
  std::vector<std::vector<double>> vertices_d_;
  std::vector<LatticeVector> seed_normals_;
  Point center_;
  Scalar radius_;
  SupportFn support_fn_;
  DistanceFn distance_fn_;

  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<LatticeVector, Scalar, LatticeVectorHash> memo_;
};

using DomainPtr = std::shared_ptr<const OmegaDomain>;

/// Mildness of one face of a polytope domain.
struct FaceMildness {
  std::size_t dim = 0;
  /// Indices into geometry().vertices.
  std::vector<std::size_t> vertices;
  /// Primitive inward normals of the facets containing the face.
  std::vector<LatticeVector> normals;
  bool mild = true;
  std::optional<LatticeVector> offending;
};

/// Checks every face: conv({0} and the facet normals at the face) may contain
/// no lattice points other than its vertices. Facets are always mild.
std::vector<FaceMildness> mild_faces_check(const OmegaDomain& domain);
bool all_faces_mild(const OmegaDomain& domain);

}  // namespace tropwave
