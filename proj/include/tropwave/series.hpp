#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "tropwave/domain.hpp"

namespace tropwave {

struct Monomial {
  LatticeVector q;
  Scalar a;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// q . z + a
Scalar monomial_value(const Monomial& m, const Point& z);

enum class SeriesKind {
  /// Every exponent missing from the explicit map carries the default
  /// coefficient -c_q, so the function vanishes on the boundary.
  omega,
  /// A plain tropical polynomial: the minimum of its explicit monomials only.
  polynomial,
};

struct Evaluation {
  Scalar value;
  /// Exponents attaining the minimum, sorted. At boundary points of an omega
  /// series only the stored and facet-normal exponents are reported.
  std::vector<LatticeVector> argmin;
  bool boundary = false;
};

/// The closed linearity region of one monomial.
struct Region {
  Monomial monomial;
  PolytopeGeometry geometry;
};

/// The monomials that are strictly minimal on an open set, with their
/// regions. Regions cover the domain and have disjoint interiors.
struct RegionSet {
  /// Every exponent that was considered; all others are provably never minimal.
  std::vector<Monomial> candidates;
  std::vector<Region> regions;

  const Region* find(const LatticeVector& q) const;
};

/// Per-point bound behind a working monomial set.
struct WorkingBound {
  Point point;
  Scalar weighted_distance;
  Scalar bound;
};

struct WorkingSet {
  std::vector<LatticeVector> exponents;
  std::vector<WorkingBound> certificate;
};

/// A tropical series on a domain: a finite explicit map q -> a_q. For omega
/// series every other exponent has the default coefficient -c_q.
///
/// Series behave as values. The mutating members exist for long-running
/// dynamics that would otherwise copy large coefficient maps at every step.
class TropicalSeries {
 public:
  static TropicalSeries zero(DomainPtr domain);
  static TropicalSeries omega(DomainPtr domain, const std::vector<Monomial>& terms);
  static TropicalSeries polynomial(DomainPtr domain, const std::vector<Monomial>& terms);

  const OmegaDomain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  SeriesKind kind() const { return kind_; }
  NumericMode mode() const { return domain_->mode(); }
  std::size_t dim() const { return domain_->dim(); }

  /// Explicit monomials sorted by exponent.
  std::vector<Monomial> monomials() const;
  std::size_t explicit_size() const { return qs_.size(); }
  bool has_explicit(const LatticeVector& q) const { return index_.count(q) != 0; }
  std::optional<Scalar> explicit_coefficient(const LatticeVector& q) const;
  /// Explicit coefficient, or the default for omega series. Throws for an
  /// exponent missing from a polynomial.
  Scalar coefficient(const LatticeVector& q) const;
  /// True when the coefficient exceeds the default -c_q.
  bool is_raised(const LatticeVector& q) const;

  const std::vector<LatticeVector>& working_set() const { return working_; }
  void set_working_set(std::vector<LatticeVector> w);
  bool is_small_form() const { return small_; }

  Evaluation evaluate_full(const Point& z) const;
  Scalar evaluate(const Point& z) const { return evaluate_full(z).value; }
  std::vector<LatticeVector> argmin_set(const Point& z) const { return evaluate_full(z).argmin; }
  /// Minimum over every monomial except `excluded` (interior points only).
  Scalar value_without(const Point& z, const LatticeVector& excluded) const;

  /// Sets a_q. Throws if the monomial would be negative somewhere on the domain.
  void set_coefficient(const LatticeVector& q, const Scalar& a);
  /// a_q += c (c >= 0).
  void raise(const LatticeVector& q, const Scalar& c);

  /// Certified linearity regions; computed once per coefficient state.
  std::shared_ptr<const RegionSet> regions() const;

  /// Equal kind, domain and explicit maps (after dropping default entries).
  bool same_terms(const TropicalSeries& other) const;

 private:
  TropicalSeries(DomainPtr domain, SeriesKind kind) : domain_(std::move(domain)), kind_(kind) {}
  void check_term(const LatticeVector& q, const Scalar& a) const;
  void put(const LatticeVector& q, const Scalar& a);
  void invalidate() { cache_ = std::make_shared<Cache>(); }
  /// Minimum over all monomials (skipping `excluded`) at an interior point,
  /// or at any point of a polynomial's domain.
  Evaluation interior_minimum(const Point& z, const LatticeVector* excluded) const;

  DomainPtr domain_;
  SeriesKind kind_;
  // Explicit terms in insertion order with a sorted index; the double copies
  // of the coefficients drive a prefilter before exact comparisons.
  std::map<LatticeVector, std::size_t> index_;
  std::vector<LatticeVector> qs_;
  std::vector<Scalar> as_;
  std::vector<double> ad_;
  std::vector<LatticeVector> working_;
  bool small_ = false;

  struct Cache {
    std::mutex mutex;
    std::shared_ptr<const RegionSet> regions;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  friend TropicalSeries small_canonical_form(const TropicalSeries& f);
};

/// Raised when the linearity regions cannot be certified within limits,
/// e.g. because infinitely many monomials are active.
class SupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponents that can be minimal at a point of P while the wave dynamic runs
/// from the zero series: { q : l^q(p) <= budget_factor |P| l(p) } over p in P.
WorkingSet working_monomial_set(const OmegaDomain& domain, const std::vector<Point>& points,
                                const Scalar& budget_factor = 2);

/// Region of one monomial only, certified the same way as regions(); nullopt
/// when the monomial is nowhere strictly minimal on an open set.
std::optional<PolytopeGeometry> certified_region(const TropicalSeries& f, const LatticeVector& q);

/// sup over the domain of f(z) - q . z: the least coefficient that keeps the
/// monomial above f.
Scalar canonical_coefficient(const TropicalSeries& f, const LatticeVector& q);
/// Every coefficient lowered to sup over the domain of f(z) - q . z.
TropicalSeries canonical_form(const TropicalSeries& f);
/// The monomials strictly minimal on an open set, with canonical coefficients.
/// For omega series, explicit exponents of f whose canonical coefficient
/// exceeds the default stay as inactive entries; dropping them would bring
/// back a default monomial that undercuts f.
TropicalSeries small_canonical_form(const TropicalSeries& f);
/// Small support: the monomials strictly minimal on an open set.
std::vector<Monomial> small_support(const TropicalSeries& f);

/// Maximum of f over the domain.
Scalar max_value(const TropicalSeries& f);

/// sup over the union of explicit supports of |a_q - b_q|.
Scalar rho(const TropicalSeries& f, const TropicalSeries& g);

/// Omega series with the given explicit terms. Terms missing a constant get
/// a_0 = max of the polynomial, so the constant stays inactive. The function
/// is the minimum of the polynomial and all default monomials;
/// `changed` reports whether some default cuts below the polynomial.
struct OmegaConversion {
  TropicalSeries series;
  bool changed = false;
};
OmegaConversion omega_from_polynomial(DomainPtr domain, const std::vector<Monomial>& terms);

}  // namespace tropwave
